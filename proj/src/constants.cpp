#include "artin/constants.hpp"

#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace artin {

void for_each_prime(std::uint64_t bound, const std::function<void(std::uint64_t)>& fn) {
    if (bound < 2) return;
    const std::uint64_t segment = 1u << 22;
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(bound)));
    std::vector<std::uint64_t> base = primes_up_to(root + 1);
    std::vector<bool> composite;
    for (std::uint64_t lo = 2; lo <= bound; lo += segment) {
        std::uint64_t hi = std::min(bound + 1, lo + segment);
        composite.assign(hi - lo, false);
        for (std::uint64_t q : base) {
            std::uint64_t first = std::max(q * q, (lo + q - 1) / q * q);
            for (std::uint64_t m = first; m < hi; m += q) composite[m - lo] = true;
        }
        for (std::uint64_t n = lo; n < hi; ++n)
            if (!composite[n - lo]) fn(n);
    }
}

namespace {

// Compensated accumulation of log-factors; one exp at the end.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

double apply_tail(double log_sum, double tail, bool correct) {
    return std::exp(correct ? log_sum - tail : log_sum);
}

void check_settings(const EulerProductSettings& s) {
    if (s.prime_bound < 3)
        throw std::invalid_argument("prime_bound must be at least 3");
}

std::mutex cache_mutex;

} // namespace

EulerProductValue twin_prime_constant_full(const EulerProductSettings& settings) {
    check_settings(settings);
    static std::map<std::pair<std::uint64_t, bool>, EulerProductValue> cache;
    {
        std::lock_guard lock(cache_mutex);
        auto it = cache.find({settings.prime_bound, settings.tail_correction});
        if (it != cache.end()) return it->second;
    }
    KahanSum log_sum;
    for_each_prime(settings.prime_bound, [&](std::uint64_t p) {
        if (p == 2) return;
        double pm1 = static_cast<double>(p - 1);
        log_sum.add(std::log1p(-1.0 / (pm1 * pm1)));
    });
    double P = static_cast<double>(settings.prime_bound);
    // sum_{p>P} 1/(p-1)^2 ~ int_P^inf dt/((t-1)^2 log t)
    double tail = 1.0 / ((P - 1.0) * std::log(P));
    EulerProductValue result{apply_tail(log_sum.sum, tail, settings.tail_correction), tail};
    std::lock_guard lock(cache_mutex);
    cache[{settings.prime_bound, settings.tail_correction}] = result;
    return result;
}

double twin_prime_constant(const EulerProductSettings& settings) {
    return twin_prime_constant_full(settings).value;
}

double li2(double x, double rel_tol) {
    if (x < 2.0) throw std::invalid_argument("li2: x must be >= 2");
    if (x == 2.0) return 0.0;
    auto f = [](double t) { double l = std::log(t); return 1.0 / (l * l); };
    // adaptive Simpson with interval bisection
    struct Simpson {
        double (*eval)(double);
        std::function<double(double, double, double, double, double, double, int)> rec;
    };
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double a, double b, double fa, double fm, double fb, double whole, int depth) -> double {
            double m = 0.5 * (a + b);
            double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            double flm = f(lm), frm = f(rm);
            double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            double delta = left + right - whole;
            if (depth > 50 || std::abs(delta) <= 15.0 * rel_tol * std::abs(left + right))
                return left + right + delta / 15.0;
            return rec(a, m, fa, flm, fm, left, depth + 1) +
                   rec(m, b, fm, frm, fb, right, depth + 1);
        };
    double a = 2.0, b = x;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return rec(a, b, fa, fm, fb, whole, 0);
}

EulerProductValue C_df_full(std::uint64_t d, std::uint64_t f,
                            const EulerProductSettings& settings) {
    if (d == 0 || d % 2 != 0) throw std::invalid_argument("C_df: d must be even");
    check_settings(settings);
    static std::map<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, bool>,
                    EulerProductValue> cache;
    auto key = std::make_tuple(d, f, settings.prime_bound, settings.tail_correction);
    {
        std::lock_guard lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    KahanSum log_sum;
    for_each_prime(settings.prime_bound, [&](std::uint64_t p) {
        if (f % p == 0) return;
        double pd = static_cast<double>(p);
        if (d % p == 0) {
            log_sum.add(std::log1p(1.0 / (pd * pd * (pd - 1.0)) - 2.0 / (pd * (pd - 1.0))));
        } else if ((d - 1) % p == 0 || (d + 1) % p == 0) {
            log_sum.add(std::log1p(-1.0 / (pd * (pd - 2.0))));
        } else {
            log_sum.add(std::log1p(-2.0 / (pd * (pd - 2.0))));
        }
    });
    double P = static_cast<double>(settings.prime_bound);
    double tail = 2.0 / ((P - 2.0) * std::log(P));
    EulerProductValue result{apply_tail(log_sum.sum, tail, settings.tail_correction), tail};
    std::lock_guard lock(cache_mutex);
    cache[key] = result;
    return result;
}

double C_df(std::uint64_t d, std::uint64_t f, const EulerProductSettings& settings) {
    return C_df_full(d, f, settings).value;
}

// Total in a: the product only inspects p | (a-1, f) and p | (a+d-1, f),
// so it is well-defined even off the coprime residues.
double K_df(std::uint64_t a, std::uint64_t d, std::uint64_t f) {
    if (f == 0) throw std::invalid_argument("K_df: f must be positive");
    double value = 1.0;
    for (auto [p, e] : factorize(f).factors) {
        (void)e;
        double pd = static_cast<double>(p);
        if ((a - 1) % p == 0) {
            value *= d % p == 0 ? 1.0 + 1.0 / (pd * pd) - 2.0 / pd
                                : 1.0 - 1.0 / pd;
        } else if ((a + d - 1) % p == 0) {
            value *= 1.0 - 1.0 / pd;
        }
    }
    return value;
}

double omega_direct(SignPair signs, std::uint64_t d, const RootSpec& root) {
    double sum = 0.0;
    for (std::uint64_t a : phi_set(signs, root.g_tilde, d).members)
        sum += K_df(a, d, root.g_tilde);
    return sum;
}

double omega_closed(SignPair signs, std::uint64_t d, const RootSpec& root,
                    bool inject_fault) {
    if (std::gcd(root.g_tilde, d) != 1)
        throw NotApplicableError("omega_closed requires gcd(g~, d) = 1");
    double prod_c = 1.0, prod_c1 = 1.0, prod_c2 = 1.0, prod_c12 = 1.0;
    std::int64_t sd = static_cast<std::int64_t>(d);
    for (auto [q, e] : factorize(root.g_tilde).factors) {
        (void)e;
        double qd = static_cast<double>(q);
        bool div_dm1 = (d - 1) % q == 0;
        bool div_dp1 = (d + 1) % q == 0;
        prod_c *= (div_dm1 || div_dp1) ? qd - 2.0 - 1.0 / qd : qd - 2.0 - 2.0 / qd;
        prod_c1 *= div_dp1
            ? -1.0 - jacobi(1 - sd, q) / qd
            : -jacobi(-sd, q) - (1.0 + jacobi(1 - sd, q)) / qd;
        prod_c2 *= div_dm1
            ? -1.0 - jacobi(1 + sd, q) / qd
            : -jacobi(sd, q) - (1.0 + jacobi(1 + sd, q)) / qd;
        prod_c12 *= -1.0 - (jacobi(1 + sd, q) + jacobi(1 - sd, q)) / qd;
    }
    int e1 = inject_fault ? -signs.eps1 : signs.eps1;
    return 0.25 * (prod_c + e1 * prod_c1 + signs.eps2 * prod_c2 +
                   e1 * signs.eps2 * prod_c12);
}

double A_constant(std::uint64_t d, const RootSpec& root) {
    AdmissibilityVerdict verdict = classify(d, root);
    if (!verdict.admissible)
        throw NotApplicableError("A_constant requires an admissible pair", verdict);
    auto omega = [&](int e1, int e2) { return omega_direct(SignPair{e1, e2}, d, root); };
    if (root.g0 % 2 != 0) {
        std::uint64_t g0_mod4 = static_cast<std::uint64_t>(((root.g0 % 4) + 4) % 4);
        if (g0_mod4 == 1) return omega(-1, -1);
        if (d % 4 == 0) return 0.5 * (omega(-1, -1) + omega(1, 1));
        return 0.5 * (omega(-1, 1) + omega(1, -1));
    }
    if (d % 8 == 0) return 0.5 * (omega(-1, -1) + omega(1, 1));
    if (d % 8 == 4) return 0.5 * (omega(-1, 1) + omega(1, -1));
    return 0.25 * (omega(-1, 1) + omega(1, 1) + omega(1, -1) + omega(-1, -1));
}

ConstantsReport predicted_ratio(std::uint64_t d, const RootSpec& root,
                                const EulerProductSettings& settings) {
    AdmissibilityVerdict verdict = classify(d, root);
    if (!verdict.admissible)
        throw NotApplicableError("predicted_ratio requires an admissible pair", verdict);
    ConstantsReport report;
    report.d = d;
    report.g = root;
    EulerProductValue c2 = twin_prime_constant_full(settings);
    EulerProductValue c = C_df_full(d, root.g_tilde, settings);
    report.C2 = c2.value;
    report.C_dg = c.value;
    report.phi_size = phi_d_size(root.g_tilde, d);
    for (SignPair s : kAllSignPairs)
        report.omega[{s.eps1, s.eps2}] = omega_direct(s, d, root);
    report.A = A_constant(d, root);
    report.predicted_ratio =
        4.0 * report.C_dg * report.A / static_cast<double>(report.phi_size);
    report.prime_bound_used = settings.prime_bound;
    report.estimated_tail_error = c.tail_estimate + c2.tail_estimate;
    return report;
}

double predicted_pi_d(double x, std::uint64_t d, const EulerProductSettings& settings) {
    double factor = 1.0;
    for (auto [p, e] : factorize(d).factors) {
        (void)e;
        if (p > 2) factor *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
    }
    return 2.0 * factor * twin_prime_constant(settings) * li2(x);
}

double predicted_pi_dg(double x, std::uint64_t d, const RootSpec& root,
                       const EulerProductSettings& settings) {
    ConstantsReport report = predicted_ratio(d, root, settings);
    return report.predicted_ratio * predicted_pi_d(x, d, settings);
}

namespace {

std::vector<std::uint64_t> squarefree_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> divs{1};
    for (auto [p, e] : factorize(n).factors) {
        (void)e;
        std::size_t count = divs.size();
        for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * p);
    }
    return divs;
}

} // namespace

double bd_triple_sum(std::uint64_t a, std::uint64_t f, std::uint64_t d, std::uint64_t N) {
    if (std::gcd(a, f) != 1 || std::gcd(a + d, f) != 1)
        throw std::invalid_argument("bd_triple_sum: a and a+d must be coprime to f");
    if (d == 0 || d % 2 != 0) throw std::invalid_argument("bd_triple_sum: d must be even");
    if (N < 1) throw std::invalid_argument("bd_triple_sum: N must be positive");

    // smallest prime factor, Mobius, and |phi_d| for every k <= N
    std::vector<std::uint32_t> spf(N + 1, 0);
    for (std::uint32_t i = 2; i <= N; ++i) {
        if (spf[i] == 0)
            for (std::uint64_t j = i; j <= N; j += i)
                if (spf[j] == 0) spf[j] = i;
    }
    std::vector<std::int8_t> mu(N + 1, 0);
    std::vector<double> phi_d_inv(N + 1, 0.0); // 1/|phi_d(k)| for square-free k
    mu[1] = 1;
    phi_d_inv[1] = 1.0;
    for (std::uint64_t k = 2; k <= N; ++k) {
        std::uint64_t n = k;
        int sign = 1;
        double phi = 1.0;
        bool squarefree = true;
        while (n > 1) {
            std::uint64_t q = spf[n];
            n /= q;
            if (n % q == 0) { squarefree = false; break; }
            sign = -sign;
            phi *= static_cast<double>(d % q == 0 ? q - 1 : q - 2);
        }
        if (squarefree) {
            mu[k] = static_cast<std::int8_t>(sign);
            phi_d_inv[k] = 1.0 / phi;
        }
    }

    auto inner_pair_sum = [&](std::uint64_t D) {
        // a_k = mu(k)/(k |phi_d(k)|) over k coprime to (d+1) D f; b_l likewise
        // with d-1. The (k,l)=1 constraint unrolls through Mobius over the gcd.
        std::vector<double> av(N + 1, 0.0), bv(N + 1, 0.0);
        for (std::uint64_t k = 1; k <= N; ++k) {
            if (mu[k] == 0) continue;
            if (std::gcd(k, D * f) != 1) continue;
            double w = mu[k] * phi_d_inv[k] / static_cast<double>(k);
            if (std::gcd(k, d + 1) == 1) av[k] = w;
            if (std::gcd(k, d - 1) == 1) bv[k] = w;
        }
        std::vector<double> A(N + 1, 0.0), B(N + 1, 0.0);
        for (std::uint64_t e = 1; e <= N; ++e) {
            double sa = 0.0, sb = 0.0;
            for (std::uint64_t m = e; m <= N; m += e) { sa += av[m]; sb += bv[m]; }
            A[e] = sa;
            B[e] = sb;
        }
        double total = 0.0;
        for (std::uint64_t e = 1; e <= N; ++e)
            if (mu[e] != 0) total += mu[e] * A[e] * B[e];
        return total;
    };

    double sum = 0.0;
    for (std::uint64_t D : squarefree_divisors(d)) {
        std::uint64_t Dshared = std::gcd(D, f);
        if ((a - 1) % Dshared != 0) continue;
        std::uint64_t Df = D / Dshared;
        double inv_phi_Df = 1.0 / static_cast<double>(phi_d_size(Df, d));
        double inner = inner_pair_sum(D);
        for (std::uint64_t kf : squarefree_divisors(std::gcd(f, a - 1))) {
            for (std::uint64_t lf : squarefree_divisors(std::gcd(f, a + d - 1))) {
                if (std::gcd(kf, lf) != 1 || std::gcd(kf * lf, D) != 1) continue;
                int sign = (mobius(factorize(kf)) * mobius(factorize(lf)));
                sum += sign * inner * inv_phi_Df /
                       (static_cast<double>(D) * D * kf * lf);
            }
        }
    }
    return sum;
}

std::string ConstantsReport::to_json() const {
    nlohmann::json j;
    j["d"] = d;
    j["g"] = g.g;
    j["g0"] = g.g0;
    j["gs"] = g.gs;
    j["g_tilde"] = g.g_tilde;
    j["C2"] = C2;
    j["C_dg"] = C_dg;
    j["phi_size"] = phi_size;
    nlohmann::json om;
    for (const auto& [key, value] : omega) {
        std::string name = std::string(key.first < 0 ? "-1" : "+1") + "," +
                           (key.second < 0 ? "-1" : "+1");
        om[name] = value;
    }
    j["omega"] = om;
    j["A"] = A;
    j["predicted_ratio"] = predicted_ratio;
    j["prime_bound_used"] = prime_bound_used;
    j["estimated_tail_error"] = estimated_tail_error;
    return j.dump(2);
}

std::string ConstantsReport::to_csv_row() const {
    std::ostringstream out;
    out.precision(6);
    out << std::fixed;
    out << g.g << "," << d << ",,,," << predicted_ratio;
    return out.str();
}

} // namespace artin
