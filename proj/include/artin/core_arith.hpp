#pragma once

// Exact integer arithmetic kernel: Jacobi symbols, 64-bit factorization,
// multiplicative functions, primitive-root order tests, and interval
// smallest-prime-factor sieving.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace artin {

struct FactoredInteger {
    std::uint64_t value = 1;
    // (prime, exponent), primes strictly increasing, exponents >= 1
    std::vector<std::pair<std::uint64_t, std::uint32_t>> factors;
};

// g = g0 * gs^2 with g0 square-free; g_tilde is the odd part of |g0|.
// Construction rejects g in {-1,0,1} and perfect powers.
struct RootSpec {
    std::int64_t g = 0;
    std::int64_t g0 = 0;       // sign matches g
    std::uint64_t gs = 1;
    std::uint64_t g_tilde = 1; // odd, square-free
    int h = 1;                 // largest exponent with g = b^h; always 1 here
};

struct InvalidRoot : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct PerfectPowerRejected : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Smallest prime factor per integer over [interval_start, interval_start+len).
// values[i] is spf(interval_start + i); 0 is the sentinel for n <= 1.
struct SpfTable {
    std::uint64_t interval_start = 0;
    std::vector<std::uint64_t> values;

    std::uint64_t spf(std::uint64_t n) const {
        return values[n - interval_start];
    }
};

// Jacobi symbol (a/n) for odd n >= 1; negative a handled via
// (-1/n) = (-1)^((n-1)/2). Returns 0 iff gcd(a,n) > 1.
int jacobi(std::int64_t a, std::uint64_t n);

// base^exp mod m with exact 128-bit intermediates; m >= 1. Negative bases
// are reduced into [0, m) first.
std::uint64_t mod_pow(std::int64_t base, std::uint64_t exp, std::uint64_t m);

// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime_u64(std::uint64_t n);

// Complete factorization of 1 <= n < 2^63: trial division by sieved small
// primes with a Pollard-rho fallback for large cofactors.
FactoredInteger factorize(std::uint64_t n);

std::uint64_t euler_phi(const FactoredInteger& n);
int mobius(const FactoredInteger& n);

RootSpec make_root_spec(std::int64_t g);

// True iff ord_p(g) = p-1, given the factorization of p-1.
bool is_primitive_root(std::int64_t g, std::uint64_t p, const FactoredInteger& p_minus_1);
bool is_primitive_root(std::int64_t g, std::uint64_t p,
                       const std::vector<std::uint64_t>& distinct_primes_of_p_minus_1);

SpfTable spf_sieve(std::uint64_t start, std::uint64_t len);

// Factor n by repeated division through an SpfTable covering n.
FactoredInteger factorize_with_spf(const SpfTable& table, std::uint64_t n);

// All primes <= bound, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

} // namespace artin
