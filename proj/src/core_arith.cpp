#include "artin/core_arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace artin {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    return std::gcd(a, b);
}

int jacobi(std::int64_t a, std::uint64_t n) {
    if (n == 0 || n % 2 == 0)
        throw std::invalid_argument("jacobi: modulus must be odd and positive");
    int sign = 1;
    if (a < 0) {
        if (n % 4 == 3) sign = -sign;
        a = -a;
    }
    std::uint64_t ua = static_cast<std::uint64_t>(a) % n;
    while (ua != 0) {
        while (ua % 2 == 0) {
            ua /= 2;
            std::uint64_t r = n % 8;
            if (r == 3 || r == 5) sign = -sign;
        }
        std::swap(ua, n);
        if (ua % 4 == 3 && n % 4 == 3) sign = -sign;
        ua %= n;
    }
    return n == 1 ? sign : 0;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

} // namespace

std::uint64_t mod_pow(std::int64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("mod_pow: zero modulus");
    std::int64_t r = base % static_cast<std::int64_t>(m);
    if (r < 0) r += static_cast<std::int64_t>(m);
    return powmod_u64(static_cast<std::uint64_t>(r), exp, m);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while (d % 2 == 0) { d /= 2; ++s; }
    // Sinclair's deterministic base set for n < 2^64
    for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        std::uint64_t x = powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

const std::vector<std::uint64_t>& small_primes() {
    static const std::vector<std::uint64_t> primes = primes_up_to(1'000'000);
    return primes;
}

std::uint64_t pollard_rho(std::uint64_t n) {
    // n odd composite with no factor <= 10^6
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t x = 2, y = 2, d = 1;
        auto step = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            std::uint64_t diff = x > y ? x - y : y - x;
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
    }
}

void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) { out.push_back(n); return; }
    std::uint64_t d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

} // namespace

FactoredInteger factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    FactoredInteger result;
    result.value = n;
    for (std::uint64_t p : small_primes()) {
        if (p * p > n) break;
        if (n % p == 0) {
            std::uint32_t e = 0;
            while (n % p == 0) { n /= p; ++e; }
            result.factors.emplace_back(p, e);
        }
    }
    if (n > 1) {
        std::vector<std::uint64_t> rest;
        factor_rec(n, rest);
        std::sort(rest.begin(), rest.end());
        for (std::size_t i = 0; i < rest.size();) {
            std::size_t j = i;
            while (j < rest.size() && rest[j] == rest[i]) ++j;
            result.factors.emplace_back(rest[i], static_cast<std::uint32_t>(j - i));
            i = j;
        }
    }
    return result;
}

std::uint64_t euler_phi(const FactoredInteger& n) {
    std::uint64_t phi = n.value;
    for (auto [p, e] : n.factors) {
        (void)e;
        phi -= phi / p;
    }
    return phi;
}

int mobius(const FactoredInteger& n) {
    for (auto [p, e] : n.factors)
        if (e >= 2) return 0;
    return n.factors.size() % 2 == 0 ? 1 : -1;
}

namespace {

// Integer k-th root check: returns r with r^k == n, or 0.
std::uint64_t exact_kth_root(std::uint64_t n, unsigned k) {
    auto pow_checked = [](std::uint64_t b, unsigned k) -> std::uint64_t {
        unsigned __int128 r = 1;
        for (unsigned i = 0; i < k; ++i) {
            r *= b;
            if (r > static_cast<unsigned __int128>(UINT64_MAX)) return 0;
        }
        return static_cast<std::uint64_t>(r);
    };
    auto guess = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / k)));
    for (std::uint64_t r = guess > 2 ? guess - 2 : 1; r <= guess + 2; ++r) {
        std::uint64_t v = pow_checked(r, k);
        if (v == n) return r;
    }
    return 0;
}

bool is_perfect_power(std::int64_t g) {
    std::uint64_t a = static_cast<std::uint64_t>(g < 0 ? -g : g);
    for (unsigned k = 2; (1ull << k) <= a; ++k) {
        if (g < 0 && k % 2 == 0) continue;
        if (exact_kth_root(a, k) != 0) return true;
    }
    return false;
}

} // namespace

RootSpec make_root_spec(std::int64_t g) {
    if (g >= -1 && g <= 1)
        throw InvalidRoot("root g must lie outside {-1, 0, 1}");
    if (is_perfect_power(g))
        throw PerfectPowerRejected("root g must not be a perfect power");
    RootSpec spec;
    spec.g = g;
    std::uint64_t abs_g = static_cast<std::uint64_t>(g < 0 ? -g : g);
    FactoredInteger f = factorize(abs_g);
    std::uint64_t g0 = 1, gs = 1;
    for (auto [p, e] : f.factors) {
        if (e % 2 == 1) g0 *= p;
        for (std::uint32_t i = 0; i < e / 2; ++i) gs *= p;
    }
    spec.g0 = g < 0 ? -static_cast<std::int64_t>(g0) : static_cast<std::int64_t>(g0);
    spec.gs = gs;
    spec.g_tilde = g0 % 2 == 1 ? g0 : g0 / 2;
    spec.h = 1;
    return spec;
}

bool is_primitive_root(std::int64_t g, std::uint64_t p, const FactoredInteger& p_minus_1) {
    if (p_minus_1.value != p - 1)
        throw std::invalid_argument("is_primitive_root: factorization does not match p-1");
    std::uint64_t check = 1;
    std::vector<std::uint64_t> primes;
    primes.reserve(p_minus_1.factors.size());
    for (auto [q, e] : p_minus_1.factors) {
        primes.push_back(q);
        for (std::uint32_t i = 0; i < e; ++i) check *= q;
    }
    if (check != p - 1)
        throw std::invalid_argument("is_primitive_root: malformed factorization");
    return is_primitive_root(g, p, primes);
}

bool is_primitive_root(std::int64_t g, std::uint64_t p,
                       const std::vector<std::uint64_t>& distinct_primes_of_p_minus_1) {
    std::int64_t r = g % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    if (r == 0) return false;
    std::uint64_t gm = static_cast<std::uint64_t>(r);
    for (std::uint64_t q : distinct_primes_of_p_minus_1) {
        if (powmod_u64(gm, (p - 1) / q, p) == 1) return false;
    }
    return true;
}

SpfTable spf_sieve(std::uint64_t start, std::uint64_t len) {
    if (len == 0) throw std::invalid_argument("spf_sieve: empty interval");
    std::uint64_t end = start + len;
    if (end < start) throw std::invalid_argument("spf_sieve: interval overflow");
    SpfTable table;
    table.interval_start = start;
    table.values.assign(len, 0);
    std::uint64_t limit = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(end - 1))) + 1;
    for (std::uint64_t q : primes_up_to(limit)) {
        std::uint64_t first = std::max(q * q, (start + q - 1) / q * q);
        for (std::uint64_t m = first; m < end; m += q) {
            if (table.values[m - start] == 0) table.values[m - start] = q;
        }
    }
    for (std::uint64_t n = std::max<std::uint64_t>(start, 2); n < end; ++n) {
        if (table.values[n - start] == 0) table.values[n - start] = n;
    }
    return table;
}

FactoredInteger factorize_with_spf(const SpfTable& table, std::uint64_t n) {
    FactoredInteger result;
    result.value = n;
    // first prime comes from the table; the cofactor n/q may leave the
    // interval, so finish with ordinary factorization
    if (n <= 1) return result;
    std::uint64_t q = table.spf(n);
    std::uint32_t e = 0;
    while (n % q == 0) { n /= q; ++e; }
    result.factors.emplace_back(q, e);
    if (n > 1) {
        FactoredInteger rest = factorize(n);
        for (auto& pe : rest.factors) result.factors.push_back(pe);
        std::sort(result.factors.begin(), result.factors.end());
    }
    return result;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> primes;
    if (bound < 2) return primes;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i * i <= bound; ++i) {
        if (!composite[i])
            for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    for (std::uint64_t i = 2; i <= bound; ++i)
        if (!composite[i]) primes.push_back(i);
    return primes;
}

} // namespace artin
