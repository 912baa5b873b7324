#pragma once

// Numerical evaluation of the conjectured density: the twin prime constant,
// Li_2, the Euler products C_{d,f}, the finite products K_{d,f}(a), the
// Omega sums, the A constant casework, and the truncated triple-sum verifier.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "artin/admissibility.hpp"
#include "artin/core_arith.hpp"

namespace artin {

struct EulerProductSettings {
    std::uint64_t prime_bound = 100'000'000;
    bool tail_correction = true;
};

struct NotApplicableError : std::runtime_error {
    explicit NotApplicableError(const std::string& what,
                                std::optional<AdmissibilityVerdict> v = std::nullopt)
        : std::runtime_error(what), verdict(std::move(v)) {}
    std::optional<AdmissibilityVerdict> verdict;
};

struct EulerProductValue {
    double value = 1.0;
    double tail_estimate = 0.0; // bound on the omitted log-tail
};

// prod_{2<p<=P} (1 - 1/(p-1)^2), tail-corrected when enabled.
EulerProductValue twin_prime_constant_full(const EulerProductSettings& settings);
double twin_prime_constant(const EulerProductSettings& settings);

// Li_2(x) = int_2^x dt/(log t)^2 by adaptive Simpson quadrature.
double li2(double x, double rel_tol = 1e-10);

// The three-branch Euler product C_{d,f}, truncated at the prime bound.
EulerProductValue C_df_full(std::uint64_t d, std::uint64_t f,
                            const EulerProductSettings& settings);
double C_df(std::uint64_t d, std::uint64_t f, const EulerProductSettings& settings);

// Finite product over p | f, branching on p | (a-1) and p | (a+d-1).
double K_df(std::uint64_t a, std::uint64_t d, std::uint64_t f);

double omega_direct(SignPair signs, std::uint64_t d, const RootSpec& root);

// Closed form of Omega (coefficients c, c1, c2, c12); requires gcd(g~,d)=1.
// The fault-injection hook exists only so the identity sweep can demonstrate
// a counterexample path; it negates eps1 when set.
double omega_closed(SignPair signs, std::uint64_t d, const RootSpec& root,
                    bool inject_fault = false);

// The admissible-pair casework combining Omega values; requires an
// admissible [d,g].
double A_constant(std::uint64_t d, const RootSpec& root);

struct ConstantsReport {
    std::uint64_t d = 2;
    RootSpec g;
    double C2 = 0.0;
    double C_dg = 0.0;                 // C_{d, g~}
    std::uint64_t phi_size = 1;        // |phi_d(g~)|
    std::map<std::pair<int, int>, double> omega; // (eps1,eps2) -> Omega
    double A = 0.0;
    double predicted_ratio = 0.0;      // 4 C A / |phi|
    std::uint64_t prime_bound_used = 0;
    double estimated_tail_error = 0.0;

    std::string to_json() const;
    // CSV row in Table-1 column order: g, d, pi_dg, pi_d, ratio, predicted.
    // Count columns are left empty here; the census fills them in.
    std::string to_csv_row() const;
};

ConstantsReport predicted_ratio(std::uint64_t d, const RootSpec& root,
                                const EulerProductSettings& settings);

double predicted_pi_d(double x, std::uint64_t d, const EulerProductSettings& settings);
double predicted_pi_dg(double x, std::uint64_t d, const RootSpec& root,
                       const EulerProductSettings& settings);

// Truncated Lemma-4.2 triple sum; converges to K_{d,f}(a) * C_{d,f}.
double bd_triple_sum(std::uint64_t a, std::uint64_t f, std::uint64_t d, std::uint64_t N);

// Enumerate all primes <= bound, ascending, through a segmented sieve.
void for_each_prime(std::uint64_t bound, const std::function<void(std::uint64_t)>& fn);

} // namespace artin
