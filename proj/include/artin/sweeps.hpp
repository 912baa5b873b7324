#pragma once

// Exhaustive property sweeps validating the closed forms against
// enumeration. Each returns the first counterexample, or nullopt on success.

#include <cstdint>
#include <optional>
#include <string>

namespace artin {

// |Phi| closed form vs enumeration, sign-pair partition of |phi_d|, and the
// zero-case predicate, over odd square-free g~ <= max_gtilde, even d <= max_d.
std::optional<std::string> sweep_phi_closed_forms(std::uint64_t max_gtilde,
                                                  std::uint64_t max_d);

// Character sums by enumeration vs their closed forms.
std::optional<std::string> sweep_char_sums(std::uint64_t max_gtilde, std::uint64_t max_d);

// classify vs the brute-force periodicity oracle, plus the Delta period check,
// over even d <= max_d and valid roots |g| <= max_abs_g.
std::optional<std::string> sweep_classifier(std::uint64_t max_d, std::uint64_t max_abs_g);

// Omega closed form vs the direct K-sum over coprime (g~, d) pairs.
std::optional<std::string> sweep_omega(std::uint64_t max_gtilde, std::uint64_t max_d,
                                       bool inject_fault = false);

} // namespace artin
