#include "artin/sweeps.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "artin/admissibility.hpp"
#include "artin/constants.hpp"
#include "artin/core_arith.hpp"

namespace artin {

namespace {

bool odd_squarefree(std::uint64_t n) {
    return n % 2 == 1 && mobius(factorize(n)) != 0;
}

std::vector<int> jacobi_table(std::uint64_t g_tilde) {
    std::vector<int> table(g_tilde + 1);
    for (std::uint64_t t = 0; t <= g_tilde; ++t)
        table[t] = jacobi(static_cast<std::int64_t>(t), g_tilde);
    return table;
}

int sign_index(int e1, int e2) {
    return (e1 < 0 ? 0 : 2) + (e2 < 0 ? 0 : 1);
}

} // namespace

std::optional<std::string> sweep_phi_closed_forms(std::uint64_t max_gtilde,
                                                  std::uint64_t max_d) {
    for (std::uint64_t g = 1; g <= max_gtilde; g += 2) {
        if (!odd_squarefree(g)) continue;
        std::vector<int> j = jacobi_table(g);
        for (std::uint64_t d = 2; d <= max_d; d += 2) {
            std::array<std::uint64_t, 4> counts{0, 0, 0, 0};
            for (std::uint64_t a = 1; a <= g; ++a) {
                int e1 = j[a];
                int e2 = j[(a + d) % g == 0 ? g : (a + d) % g];
                if (e1 != 0 && e2 != 0) counts[static_cast<std::size_t>(sign_index(e1, e2))] += 1;
            }
            std::uint64_t total = 0;
            for (SignPair s : kAllSignPairs) {
                std::uint64_t enumerated = counts[static_cast<std::size_t>(sign_index(s.eps1, s.eps2))];
                std::uint64_t closed = phi_size_closed(s, g, d);
                total += enumerated;
                if (enumerated != closed) {
                    std::ostringstream msg;
                    msg << "Phi size mismatch: g~=" << g << " d=" << d
                        << " signs=(" << s.eps1 << "," << s.eps2 << ") enumerated="
                        << enumerated << " closed=" << closed;
                    return msg.str();
                }
                if (phi_is_zero(s, g, d) != (closed == 0)) {
                    std::ostringstream msg;
                    msg << "zero-case mismatch: g~=" << g << " d=" << d
                        << " signs=(" << s.eps1 << "," << s.eps2 << ") closed=" << closed;
                    return msg.str();
                }
            }
            if (total != phi_d_size(g, d)) {
                std::ostringstream msg;
                msg << "sign-pair partition mismatch: g~=" << g << " d=" << d
                    << " sum=" << total << " |phi_d|=" << phi_d_size(g, d);
                return msg.str();
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> sweep_char_sums(std::uint64_t max_gtilde, std::uint64_t max_d) {
    for (std::uint64_t g = 1; g <= max_gtilde; g += 2) {
        if (!odd_squarefree(g)) continue;
        for (std::uint64_t d = 2; d <= max_d; d += 2) {
            CharSums enumerated = char_sums(g, d);
            CharSums closed = char_sums_closed(g, d);
            if (enumerated.shifted_coprime != closed.shifted_coprime ||
                enumerated.plain_coprime != closed.plain_coprime ||
                enumerated.product != closed.product) {
                std::ostringstream msg;
                msg << "char sum mismatch: g~=" << g << " d=" << d << " enumerated=("
                    << enumerated.shifted_coprime << "," << enumerated.plain_coprime << ","
                    << enumerated.product << ") closed=(" << closed.shifted_coprime << ","
                    << closed.plain_coprime << "," << closed.product << ")";
                return msg.str();
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> sweep_classifier(std::uint64_t max_d, std::uint64_t max_abs_g) {
    for (std::int64_t g = -static_cast<std::int64_t>(max_abs_g);
         g <= static_cast<std::int64_t>(max_abs_g); ++g) {
        RootSpec root;
        try {
            root = make_root_spec(g);
        } catch (const std::invalid_argument&) {
            continue;
        }
        std::uint64_t abs_g = static_cast<std::uint64_t>(g < 0 ? -g : g);
        for (std::uint64_t d = 2; d <= max_d; d += 2) {
            bool predicted = classify(d, root).admissible;
            bool observed = classify_bruteforce(d, root);
            if (predicted != observed) {
                std::ostringstream msg;
                msg << "classifier mismatch: d=" << d << " g=" << g
                    << " classify=" << predicted << " bruteforce=" << observed;
                return msg.str();
            }
            // Delta period divides 4|g|
            for (std::uint64_t n = 1; n <= 8 * abs_g; n += 2) {
                if (delta(d, root, n) != delta(d, root, n + 4 * abs_g)) {
                    std::ostringstream msg;
                    msg << "Delta period violation: d=" << d << " g=" << g << " n=" << n;
                    return msg.str();
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> sweep_omega(std::uint64_t max_gtilde, std::uint64_t max_d,
                                       bool inject_fault) {
    for (std::uint64_t gt = 1; gt <= max_gtilde; gt += 2) {
        if (!odd_squarefree(gt)) continue;
        RootSpec root;
        root.g = static_cast<std::int64_t>(gt);
        root.g0 = root.g;
        root.gs = 1;
        root.g_tilde = gt;
        for (std::uint64_t d = 2; d <= max_d; d += 2) {
            if (gcd_u64(gt, d) != 1) continue;
            for (SignPair s : kAllSignPairs) {
                double direct = omega_direct(s, d, root);
                double closed = omega_closed(s, d, root, inject_fault);
                double scale = std::max({1.0, std::abs(direct), std::abs(closed)});
                if (std::abs(direct - closed) > 1e-12 * scale) {
                    std::ostringstream msg;
                    msg << "Omega mismatch: g~=" << gt << " d=" << d << " signs=("
                        << s.eps1 << "," << s.eps2 << ") direct=" << direct
                        << " closed=" << closed;
                    return msg.str();
                }
            }
        }
    }
    return std::nullopt;
}

} // namespace artin
