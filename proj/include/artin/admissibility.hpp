#pragma once

// Admissibility of a gap/root pair [d,g]: the residue sets phi_d and
// Phi_{e1,e2}, their closed forms, the indicator Delta_{d,g}, the mod-4/mod-8
// residue decomposition, and the full classifier with its brute-force oracle.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "artin/core_arith.hpp"

namespace artin {

struct SignPair {
    int eps1 = 1; // +1 or -1
    int eps2 = 1;

    bool operator==(const SignPair&) const = default;
};

inline constexpr std::array<SignPair, 4> kAllSignPairs = {
    SignPair{-1, -1}, SignPair{-1, 1}, SignPair{1, -1}, SignPair{1, 1}};

struct PhiSet {
    std::uint64_t modulus = 1; // odd square-free g~
    std::uint64_t d = 2;
    SignPair signs;
    std::vector<std::uint64_t> members; // sorted residues in [1, modulus]
};

// Which delta_{e1,e2} branch is active for each odd residue class of n.
struct ResidueDecomposition {
    std::uint64_t two_power = 4; // 4 or 8
    std::array<SignPair, 4> signs_for_class; // index (j-1)/2 for odd j mod two_power

    const SignPair& at(std::uint64_t n) const {
        return signs_for_class[((n % two_power) - 1) / 2];
    }
};

enum class BlockedBy { c1, c2a, c2b, c3a, c3b, c3c };

std::string to_string(BlockedBy tag);

struct AdmissibilityVerdict {
    bool admissible = true;
    std::optional<BlockedBy> blocked_by;
};

// phi_d(m) = { 1 <= a <= m : gcd(a,m) = gcd(a+d,m) = 1 }, by enumeration.
std::vector<std::uint64_t> phi_d_set(std::uint64_t m, std::uint64_t d);

// |phi_d(m)| via the multiplicative formula.
std::uint64_t phi_d_size(std::uint64_t m, std::uint64_t d);

PhiSet phi_set(SignPair signs, std::uint64_t g_tilde, std::uint64_t d);

std::uint64_t phi_size_closed(SignPair signs, std::uint64_t g_tilde, std::uint64_t d);

struct CharSums {
    std::int64_t shifted_coprime; // sum of (a/g) over a with (a+d,g)=1
    std::int64_t plain_coprime;   // sum of (a+d/g) over a with (a,g)=1
    std::int64_t product;         // sum of (a/g)(a+d/g) over all a
};

CharSums char_sums(std::uint64_t g_tilde, std::uint64_t d);
CharSums char_sums_closed(std::uint64_t g_tilde, std::uint64_t d);

// The zero-case lists, evaluated without enumeration.
bool phi_is_zero(SignPair signs, std::uint64_t g_tilde, std::uint64_t d);

// Delta_{d,g}(n) = 1 iff (g/n) = (g/(n+d)) = -1, with the full g.
int delta(std::uint64_t d, const RootSpec& root, std::uint64_t n);

ResidueDecomposition residue_decomposition(std::uint64_t d, const RootSpec& root);

AdmissibilityVerdict classify(std::uint64_t d, const RootSpec& root);

// Oracle: Delta_{d,g} hits 1 somewhere in one full period of odd n in [1, 4|g|].
bool classify_bruteforce(std::uint64_t d, const RootSpec& root);

} // namespace artin
