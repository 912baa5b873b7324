#include "artin/admissibility.hpp"

#include <numeric>

namespace artin {

std::string to_string(BlockedBy tag) {
    switch (tag) {
        case BlockedBy::c1: return "1";
        case BlockedBy::c2a: return "2a";
        case BlockedBy::c2b: return "2b";
        case BlockedBy::c3a: return "3a";
        case BlockedBy::c3b: return "3b";
        case BlockedBy::c3c: return "3c";
    }
    return "?";
}

namespace {

void require_even(std::uint64_t d) {
    if (d == 0 || d % 2 != 0)
        throw std::invalid_argument("d must be a positive even integer");
}

void require_odd_squarefree(std::uint64_t g_tilde) {
    if (g_tilde == 0 || g_tilde % 2 == 0)
        throw std::invalid_argument("modulus must be odd and positive");
    if (mobius(factorize(g_tilde)) == 0)
        throw std::invalid_argument("modulus must be square-free");
}

} // namespace

std::vector<std::uint64_t> phi_d_set(std::uint64_t m, std::uint64_t d) {
    require_even(d);
    if (m == 0) throw std::invalid_argument("phi_d_set: m must be positive");
    std::vector<std::uint64_t> members;
    for (std::uint64_t a = 1; a <= m; ++a) {
        if (std::gcd(a, m) == 1 && std::gcd(a + d, m) == 1) members.push_back(a);
    }
    return members;
}

std::uint64_t phi_d_size(std::uint64_t m, std::uint64_t d) {
    require_even(d);
    std::uint64_t size = 1;
    for (auto [q, e] : factorize(m).factors) {
        std::uint64_t head = d % q == 0 ? q - 1 : q - 2;
        for (std::uint32_t i = 1; i < e; ++i) head *= q;
        size *= head;
    }
    return size;
}

PhiSet phi_set(SignPair signs, std::uint64_t g_tilde, std::uint64_t d) {
    require_even(d);
    require_odd_squarefree(g_tilde);
    PhiSet set;
    set.modulus = g_tilde;
    set.d = d;
    set.signs = signs;
    for (std::uint64_t a = 1; a <= g_tilde; ++a) {
        if (jacobi(static_cast<std::int64_t>(a), g_tilde) == signs.eps1 &&
            jacobi(static_cast<std::int64_t>(a + d), g_tilde) == signs.eps2)
            set.members.push_back(a);
    }
    return set;
}

std::uint64_t phi_size_closed(SignPair signs, std::uint64_t g_tilde, std::uint64_t d) {
    require_even(d);
    require_odd_squarefree(g_tilde);
    FactoredInteger f = factorize(g_tilde);
    int r = static_cast<int>(f.factors.size());
    auto phi_size = static_cast<std::int64_t>(phi_d_size(g_tilde, d));
    std::uint64_t common = std::gcd(g_tilde, d);
    std::int64_t sign_r = r % 2 == 0 ? 1 : -1;
    std::int64_t value;
    if (common == 1) {
        std::int64_t sd = static_cast<std::int64_t>(d % g_tilde);
        value = phi_size + sign_r * (jacobi(-sd, g_tilde) * signs.eps1 +
                                     jacobi(sd, g_tilde) * signs.eps2 +
                                     signs.eps1 * signs.eps2);
    } else {
        int s = 0;
        std::int64_t prod = 1;
        for (auto [q, e] : f.factors) {
            (void)e;
            if (d % q == 0) { ++s; prod *= static_cast<std::int64_t>(q - 1); }
        }
        std::int64_t sign_rs = (r - s) % 2 == 0 ? 1 : -1;
        value = phi_size + sign_rs * signs.eps1 * signs.eps2 * prod;
    }
    return static_cast<std::uint64_t>(value / 4);
}

CharSums char_sums(std::uint64_t g_tilde, std::uint64_t d) {
    require_even(d);
    require_odd_squarefree(g_tilde);
    CharSums sums{0, 0, 0};
    for (std::uint64_t a = 1; a <= g_tilde; ++a) {
        int ja = jacobi(static_cast<std::int64_t>(a), g_tilde);
        int jad = jacobi(static_cast<std::int64_t>(a + d), g_tilde);
        if (std::gcd(a + d, g_tilde) == 1) sums.shifted_coprime += ja;
        if (std::gcd(a, g_tilde) == 1) sums.plain_coprime += jad;
        sums.product += static_cast<std::int64_t>(ja) * jad;
    }
    return sums;
}

CharSums char_sums_closed(std::uint64_t g_tilde, std::uint64_t d) {
    require_even(d);
    require_odd_squarefree(g_tilde);
    FactoredInteger f = factorize(g_tilde);
    int r = static_cast<int>(f.factors.size());
    int s = 0;
    std::int64_t prod = 1;
    for (auto [q, e] : f.factors) {
        (void)e;
        if (d % q == 0) { ++s; prod *= static_cast<std::int64_t>(q - 1); }
    }
    std::int64_t sign_r = r % 2 == 0 ? 1 : -1;
    std::int64_t sign_rs = (r - s) % 2 == 0 ? 1 : -1;
    CharSums sums{0, 0, sign_rs * prod};
    if (s == 0) {
        std::int64_t sd = static_cast<std::int64_t>(d % g_tilde);
        sums.shifted_coprime = sign_r * jacobi(-sd, g_tilde);
        sums.plain_coprime = sign_r * jacobi(sd, g_tilde);
    }
    return sums;
}

bool phi_is_zero(SignPair signs, std::uint64_t g_tilde, std::uint64_t d) {
    require_even(d);
    require_odd_squarefree(g_tilde);
    bool divides_d = d % g_tilde == 0;
    bool divides_3d = (3 * d) % g_tilde == 0;
    if (signs.eps1 != signs.eps2) {
        // Beyond g | d, the coprime branch of the closed form also vanishes
        // when |phi_d(g)| = 1 or 3 cancels against the character terms:
        // 4|Phi| = |phi| + (-1)^r(e1 (-d/g) + e2 (d/g) - 1). That pins down
        // g = 3 (one residue class of d mod 3) and g = 15 (one value of the
        // Jacobi symbol (d/15)).
        if (divides_d) return true;
        if (g_tilde == 3 && d % 3 != 0)
            return d % 3 == (signs.eps1 == -1 ? 1u : 2u);
        if (g_tilde == 15 && gcd_u64(d, 15) == 1)
            return jacobi(static_cast<std::int64_t>(d), 15) == (signs.eps1 == -1 ? -1 : 1);
        return false;
    }
    if (signs.eps1 == -1) {
        return g_tilde == 1 ||
               (g_tilde == 5 && (d % 5 == 2 || d % 5 == 3)) ||
               (!divides_d && divides_3d);
    }
    return (g_tilde == 5 && (d % 5 == 1 || d % 5 == 4)) ||
           (!divides_d && divides_3d);
}

int delta(std::uint64_t d, const RootSpec& root, std::uint64_t n) {
    if (n % 2 == 0) throw std::invalid_argument("delta: n must be odd");
    return jacobi(root.g, n) == -1 && jacobi(root.g, n + d) == -1 ? 1 : 0;
}

ResidueDecomposition residue_decomposition(std::uint64_t d, const RootSpec& root) {
    require_even(d);
    std::uint64_t g0_mod8 = static_cast<std::uint64_t>(((root.g0 % 8) + 8) % 8);
    ResidueDecomposition dec;
    const SignPair mm{-1, -1}, pp{1, 1}, mp{-1, 1}, pm{1, -1};
    if (root.g0 % 2 != 0) {
        dec.two_power = 4;
        if (g0_mod8 % 4 == 1) {
            dec.signs_for_class = {mm, mm, mm, mm};
        } else if (d % 4 == 0) {
            dec.signs_for_class = {mm, pp, mm, pp};
        } else {
            dec.signs_for_class = {mp, pm, mp, pm};
        }
        return dec;
    }
    dec.two_power = 8;
    if (g0_mod8 == 2) {
        switch (d % 8) {
            case 0: dec.signs_for_class = {mm, pp, pp, mm}; break;
            case 2: dec.signs_for_class = {mp, pp, pm, mm}; break;
            case 4: dec.signs_for_class = {mp, pm, pm, mp}; break;
            default: dec.signs_for_class = {mm, pm, pp, mp}; break;
        }
    } else { // g0 = 6 (mod 8)
        switch (d % 8) {
            case 0: dec.signs_for_class = {mm, mm, pp, pp}; break;
            case 2: dec.signs_for_class = {mm, mp, pp, pm}; break;
            case 4: dec.signs_for_class = {mp, mp, pm, pm}; break;
            default: dec.signs_for_class = {mp, mm, pm, pp}; break;
        }
    }
    return dec;
}

AdmissibilityVerdict classify(std::uint64_t d, const RootSpec& root) {
    require_even(d);
    std::uint64_t abs_g0 = static_cast<std::uint64_t>(root.g0 < 0 ? -root.g0 : root.g0);
    std::uint64_t g0_mod4 = static_cast<std::uint64_t>(((root.g0 % 4) + 4) % 4);
    bool g0_divides_d = d % abs_g0 == 0;
    bool g0_divides_3d = (3 * d) % abs_g0 == 0;

    std::optional<BlockedBy> tag;
    if (root.g0 == 5 && (d % 5 == 2 || d % 5 == 3)) {
        tag = BlockedBy::c1;
    } else if (g0_divides_d && d % 4 == 2 && g0_mod4 == 3) {
        tag = BlockedBy::c2a;
    } else if (g0_divides_d && d % 8 == 4 && g0_mod4 == 2) {
        tag = BlockedBy::c2b;
    } else if (!g0_divides_d && g0_divides_3d && g0_mod4 == 1) {
        tag = BlockedBy::c3a;
    } else if (!g0_divides_d && g0_divides_3d && g0_mod4 == 3 && d % 4 == 0) {
        tag = BlockedBy::c3b;
    } else if (!g0_divides_d && g0_divides_3d && g0_mod4 == 2 && d % 8 == 0) {
        tag = BlockedBy::c3c;
    }
    return AdmissibilityVerdict{!tag.has_value(), tag};
}

bool classify_bruteforce(std::uint64_t d, const RootSpec& root) {
    std::uint64_t abs_g = static_cast<std::uint64_t>(root.g < 0 ? -root.g : root.g);
    for (std::uint64_t n = 1; n <= 4 * abs_g; n += 2) {
        if (delta(d, root, n) == 1) return true;
    }
    return false;
}

} // namespace artin
