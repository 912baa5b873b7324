#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <numeric>
#include <random>

#include "artin/core_arith.hpp"

using namespace artin;

namespace {

// Independent Jacobi oracle: naive definition via factoring n and Legendre
// symbols computed by Euler's criterion.
int legendre_naive(std::int64_t a, std::uint64_t p) {
    std::int64_t r = a % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    if (r == 0) return 0;
    std::uint64_t e = mod_pow(r, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

int jacobi_naive(std::int64_t a, std::uint64_t n) {
    int result = 1;
    for (const auto& [p, k] : factorize(n).factors)
        for (std::uint32_t i = 0; i < k; ++i) result *= legendre_naive(a, p);
    return result;
}

FactoredInteger factorize_naive(std::uint64_t n) {
    FactoredInteger out;
    out.value = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        std::uint32_t k = 0;
        while (n % p == 0) { n /= p; ++k; }
        out.factors.emplace_back(p, k);
    }
    if (n > 1) out.factors.emplace_back(n, 1);
    return out;
}

std::uint64_t order_naive(std::int64_t g, std::uint64_t p) {
    std::uint64_t r = static_cast<std::uint64_t>(((g % static_cast<std::int64_t>(p)) +
                                                  static_cast<std::int64_t>(p)) %
                                                 static_cast<std::int64_t>(p));
    if (r == 0) return 0;
    std::uint64_t acc = 1;
    for (std::uint64_t k = 1; k <= p - 1; ++k) {
        acc = acc * r % p;
        if (acc == 1) return k;
    }
    return 0;
}

} // namespace

TEST_CASE("jacobi agrees with the factored Legendre oracle") {
    for (std::uint64_t n = 1; n <= 201; n += 2)
        for (std::int64_t a = -500; a <= 500; ++a) {
            CAPTURE(a);
            CAPTURE(n);
            CHECK(jacobi(a, n) == jacobi_naive(a, n));
        }
}

TEST_CASE("jacobi periodicity and multiplicativity") {
    for (std::uint64_t n = 1; n <= 201; n += 2) {
        for (std::int64_t a = 1; a <= 500; ++a)
            CHECK(jacobi(a, n) == jacobi(a % static_cast<std::int64_t>(n), n));
        for (std::int64_t a = -40; a <= 40; ++a)
            for (std::int64_t b = -40; b <= 40; ++b)
                CHECK(jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n));
    }
}

TEST_CASE("jacobi equals Euler's criterion at odd primes") {
    for (std::uint64_t p : primes_up_to(1000)) {
        if (p == 2) continue;
        for (std::int64_t a = 1; a < static_cast<std::int64_t>(p); ++a)
            CHECK(jacobi(a, p) == legendre_naive(a, p));
    }
}

TEST_CASE("jacobi of -1 follows the supplement") {
    for (std::uint64_t n = 1; n <= 999; n += 2)
        CHECK(jacobi(-1, n) == ((n - 1) / 2 % 2 == 0 ? 1 : -1));
}

TEST_CASE("mod_pow basics") {
    CHECK(mod_pow(2, 10, 1000) == 24);
    CHECK(mod_pow(7, 0, 13) == 1);
    CHECK(mod_pow(3, 4, 5) == 1);
    CHECK(mod_pow(-2, 3, 7) == mod_pow(5, 3, 7));
    CHECK_THROWS_AS(mod_pow(2, 3, 0), std::invalid_argument);
    // exact 128-bit intermediates near the top of the range
    std::uint64_t m = 0xffffffffffffffc5ull; // large prime
    CHECK(mod_pow(2, m - 1, m) == 1);
}

TEST_CASE("deterministic primality") {
    CHECK_FALSE(is_prime_u64(0));
    CHECK_FALSE(is_prime_u64(1));
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(3));
    CHECK_FALSE(is_prime_u64(3215031751ull)); // strong pseudoprime to 2,3,5,7
    CHECK(is_prime_u64(0xffffffffffffffc5ull));
    auto primes = primes_up_to(10000);
    std::size_t idx = 0;
    for (std::uint64_t n = 2; n <= 10000; ++n) {
        bool expect = idx < primes.size() && primes[idx] == n;
        if (expect) ++idx;
        CHECK(is_prime_u64(n) == expect);
    }
}

TEST_CASE("factorize matches trial division") {
    CHECK(factorize(1).factors.empty());
    auto f360 = factorize(360);
    REQUIRE(f360.factors.size() == 3);
    CHECK(f360.factors[0] == std::pair<std::uint64_t, std::uint32_t>{2, 3});
    CHECK(f360.factors[1] == std::pair<std::uint64_t, std::uint32_t>{3, 2});
    CHECK(f360.factors[2] == std::pair<std::uint64_t, std::uint32_t>{5, 1});
    CHECK_THROWS_AS(factorize(0), std::invalid_argument);

    auto f = factorize(1000000006ull);
    auto expect = factorize_naive(1000000006ull);
    CHECK(f.factors == expect.factors);

    std::mt19937_64 rng(12345);
    for (int i = 0; i < 200; ++i) {
        std::uint64_t n = rng() % 10000000 + 2;
        CHECK(factorize(n).factors == factorize_naive(n).factors);
    }
    // value with a large prime cofactor exercising the rho fallback
    std::uint64_t big = 1000003ull * 1000033ull;
    auto fb = factorize(big);
    REQUIRE(fb.factors.size() == 2);
    CHECK(fb.factors[0].first == 1000003ull);
    CHECK(fb.factors[1].first == 1000033ull);
}

TEST_CASE("euler_phi equals coprime count") {
    CHECK(euler_phi(factorize(1)) == 1);
    CHECK(euler_phi(factorize(10)) == 4);
    CHECK(euler_phi(factorize(360)) == 96);
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        std::uint64_t count = 0;
        for (std::uint64_t k = 1; k <= n; ++k)
            if (std::gcd(k, n) == 1) ++count;
        CHECK(euler_phi(factorize(n)) == count);
    }
}

TEST_CASE("mobius basics") {
    CHECK(mobius(factorize(1)) == 1);
    CHECK(mobius(factorize(30)) == -1);
    CHECK(mobius(factorize(12)) == 0);
    CHECK(mobius(factorize(6)) == 1);
}

TEST_CASE("make_root_spec decomposition") {
    RootSpec r2 = make_root_spec(2);
    CHECK(r2.g0 == 2);
    CHECK(r2.gs == 1);
    CHECK(r2.g_tilde == 1);
    RootSpec r12 = make_root_spec(12);
    CHECK(r12.g0 == 3);
    CHECK(r12.gs == 2);
    CHECK(r12.g_tilde == 3);
    CHECK_THROWS_AS(make_root_spec(0), InvalidRoot);
    CHECK_THROWS_AS(make_root_spec(1), InvalidRoot);
    CHECK_THROWS_AS(make_root_spec(-1), InvalidRoot);
    CHECK_THROWS_AS(make_root_spec(8), PerfectPowerRejected);
    CHECK_THROWS_AS(make_root_spec(-8), PerfectPowerRejected);
    CHECK_THROWS_AS(make_root_spec(49), PerfectPowerRejected);
    // -4 is not a perfect power over the integers
    RootSpec rm4 = make_root_spec(-4);
    CHECK(rm4.g0 == -1 * 1); // -4 = -1 * 2^2
    CHECK(rm4.gs == 2);
    CHECK(rm4.g_tilde == 1);
}

TEST_CASE("root spec invariants over the accepted range") {
    for (std::int64_t g = -1000000; g <= 1000000; g += 1237) {
        RootSpec root;
        try {
            root = make_root_spec(g);
        } catch (const std::invalid_argument&) {
            continue;
        }
        CHECK(root.g0 * static_cast<std::int64_t>(root.gs * root.gs) == g);
        std::uint64_t abs_g0 = static_cast<std::uint64_t>(root.g0 < 0 ? -root.g0 : root.g0);
        CHECK(mobius(factorize(abs_g0)) != 0);
        CHECK(root.g_tilde % 2 == 1);
        CHECK(root.g_tilde == (abs_g0 % 2 == 0 ? abs_g0 / 2 : abs_g0));
    }
}

TEST_CASE("is_primitive_root matches the naive order test") {
    CHECK(is_primitive_root(2, 11, factorize(10)));
    CHECK_FALSE(is_primitive_root(2, 7, factorize(6)));
    CHECK_FALSE(is_primitive_root(22, 11, factorize(10)));
    for (std::uint64_t p : primes_up_to(1000)) {
        if (p == 2) continue;
        FactoredInteger pm1 = factorize(p - 1);
        for (std::int64_t g = -50; g <= 50; ++g) {
            bool naive = order_naive(g, p) == p - 1;
            CHECK(is_primitive_root(g, p, pm1) == naive);
        }
    }
}

TEST_CASE("spf sieve agrees with trial division") {
    SpfTable small = spf_sieve(2, 8);
    CHECK(small.spf(9) == 3);
    CHECK(small.spf(7) == 7);
    CHECK(small.spf(4) == 2);
    SpfTable unit = spf_sieve(0, 3);
    CHECK(unit.spf(1) == 0);
    CHECK(unit.spf(0) == 0);

    SpfTable table = spf_sieve(1000000, 10000);
    std::mt19937_64 rng(99);
    for (int i = 0; i < 1000; ++i) {
        std::uint64_t n = 1000000 + rng() % 10000;
        CHECK(factorize_with_spf(table, n).factors == factorize_naive(n).factors);
    }
}

TEST_CASE("primes_up_to counts") {
    CHECK(primes_up_to(1).empty());
    CHECK(primes_up_to(2) == std::vector<std::uint64_t>{2});
    CHECK(primes_up_to(100).size() == 25);
    CHECK(primes_up_to(1000000).size() == 78498);
}
