#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <vector>

#include "artin/admissibility.hpp"
#include "artin/census.hpp"
#include "artin/constants.hpp"
#include "artin/core_arith.hpp"

using namespace artin;

namespace {

bool naive_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

struct NaiveCounts {
    std::uint64_t pi_d = 0;
    std::uint64_t pi_dg = 0;
    double Pi_sum = 0.0;
};

// Single-threaded trial-division oracle for the census.
NaiveCounts naive_census(std::uint64_t x, std::uint64_t d, const RootSpec* root) {
    NaiveCounts out;
    for (std::uint64_t p = 3; p + d <= x; p += 2) {
        if (!naive_prime(p) || !naive_prime(p + d)) continue;
        out.pi_d += 1;
        if (!root) continue;
        FactoredInteger f1 = factorize(p - 1);
        FactoredInteger f2 = factorize(p + d - 1);
        if (is_primitive_root(root->g, p, f1) && is_primitive_root(root->g, p + d, f2))
            out.pi_dg += 1;
        double r1 = static_cast<double>(euler_phi(f1)) / static_cast<double>(p - 1);
        double r2 = static_cast<double>(euler_phi(f2)) / static_cast<double>(p + d - 1);
        out.Pi_sum += 4.0 * r1 * r2 * delta(d, *root, p);
    }
    return out;
}

} // namespace

TEST_CASE("prime pair stream hand values") {
    PrimePairStream stream(100, 2);
    std::vector<std::uint64_t> got;
    while (auto p = stream.next()) got.push_back(*p);
    CHECK(got == std::vector<std::uint64_t>{3, 5, 11, 17, 29, 41, 59, 71});

    PrimePairStream small(10, 2);
    got.clear();
    while (auto p = small.next()) got.push_back(*p);
    CHECK(got == std::vector<std::uint64_t>{3, 5});

    CHECK_THROWS_AS(PrimePairStream(100, 3), std::invalid_argument);
}

TEST_CASE("census matches hand counts at x = 100") {
    CensusRequest req;
    req.x = 100;
    req.d = 2;
    req.g = make_root_spec(2);
    CensusReport report = count_census(req);
    CHECK(report.final_row().pi_d == 8);
    CHECK(report.final_row().pi_dg == 3); // p in {3, 11, 59}
    CHECK(report.delta_violations == 0);
}

TEST_CASE("census matches the trial-division oracle at x = 100000") {
    const std::uint64_t x = 100000;
    struct Pair { std::int64_t g; std::uint64_t d; };
    for (Pair t : {Pair{2, 2}, Pair{3, 2}, Pair{5, 4}, Pair{6, 4}, Pair{7, 8}}) {
        RootSpec root = make_root_spec(t.g);
        NaiveCounts expect = naive_census(x, t.d, &root);
        CensusRequest req;
        req.x = x;
        req.d = t.d;
        req.g = root;
        req.segment_size = 8192;
        CensusReport report = count_census(req);
        CAPTURE(t.g); CAPTURE(t.d);
        CHECK(report.final_row().pi_d == expect.pi_d);
        CHECK(report.final_row().pi_dg == expect.pi_dg);
        CHECK(report.final_row().Pi_sum ==
              doctest::Approx(expect.Pi_sum).epsilon(1e-9));
        // pi_dg - Pi_sum = 4 e_proxy exactly
        CHECK(static_cast<double>(report.final_row().pi_dg) -
                  report.final_row().Pi_sum ==
              doctest::Approx(4.0 * report.final_row().e_proxy).epsilon(1e-12));
    }
}

TEST_CASE("determinism across threads and segment sizes") {
    CensusRequest base;
    base.x = 1000000;
    base.d = 6;
    base.g = make_root_spec(7);
    base.checkpoints = {250000, 500000};
    CensusReport ref = count_census(base);
    for (unsigned threads : {1u, 4u, 8u}) {
        for (std::uint64_t seg : {65536ull, 1048576ull}) {
            CensusRequest req = base;
            req.threads = threads;
            req.segment_size = seg;
            CensusReport got = count_census(req);
            REQUIRE(got.rows.size() == ref.rows.size());
            for (std::size_t i = 0; i < ref.rows.size(); ++i) {
                CHECK(got.rows[i].x == ref.rows[i].x);
                CHECK(got.rows[i].pi_d == ref.rows[i].pi_d);
                CHECK(got.rows[i].pi_dg == ref.rows[i].pi_dg);
                if (seg == base.segment_size) // same partition: bit-identical
                    CHECK(got.rows[i].Pi_sum == ref.rows[i].Pi_sum);
                else
                    CHECK(got.rows[i].Pi_sum ==
                          doctest::Approx(ref.rows[i].Pi_sum).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("checkpoint rows are monotone and consistent") {
    CensusRequest req;
    req.x = 500000;
    req.d = 2;
    req.g = make_root_spec(3);
    req.checkpoints = {100000, 200000, 300000, 400000};
    CensusReport report = count_census(req);
    REQUIRE(report.rows.size() == 5);
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        CHECK(report.rows[i].pi_d >= report.rows[i - 1].pi_d);
        CHECK(report.rows[i].pi_dg >= report.rows[i - 1].pi_dg);
        CHECK(report.rows[i].Pi_sum >= report.rows[i - 1].Pi_sum);
    }
    for (const auto& row : report.rows) {
        CHECK(row.pi_dg <= row.pi_d);
        CHECK(row.Pi_sum >= 0.0);
    }
    // each checkpoint row equals a fresh run to that bound
    for (std::size_t i = 0; i + 1 < report.rows.size(); ++i) {
        CensusRequest sub = req;
        sub.x = report.rows[i].x;
        sub.checkpoints.clear();
        CensusReport fresh = count_census(sub);
        CHECK(fresh.final_row().pi_d == report.rows[i].pi_d);
        CHECK(fresh.final_row().pi_dg == report.rows[i].pi_dg);
        // summation grouping differs between a bucketed run and a fresh run
        CHECK(fresh.final_row().Pi_sum ==
              doctest::Approx(report.rows[i].Pi_sum).epsilon(1e-12));
    }
}

TEST_CASE("blocked pair yields zero pi_dg with a warning") {
    CensusRequest req;
    req.x = 200000;
    req.d = 4;
    req.g = make_root_spec(2);
    CensusReport report = count_census(req);
    CHECK(report.blocked_warning);
    CHECK(report.final_row().pi_dg == 0);
}

TEST_CASE("pi_d only census when g is absent") {
    CensusRequest req;
    req.x = 100000;
    req.d = 2;
    CensusReport report = count_census(req);
    NaiveCounts expect = naive_census(100000, 2, nullptr);
    CHECK(report.final_row().pi_d == expect.pi_d);
    CHECK(report.final_row().pi_dg == 0);
}

TEST_CASE("counts in arithmetic progressions partition pi_d") {
    const std::uint64_t x = 100000, d = 2, q = 15;
    std::uint64_t total = 0;
    for (std::uint64_t a : phi_d_set(q, d))
        total += count_pi_d_in_ap(x, d, a, q);
    CensusRequest req;
    req.x = x;
    req.d = d;
    std::uint64_t pi_d = count_census(req).final_row().pi_d;
    // pairs whose p shares a factor with q are the O(1) remainder
    CHECK(total <= pi_d);
    CHECK(pi_d - total <= 2); // p in {3, 5} only
    CHECK_THROWS_AS(count_pi_d_in_ap(x, 2, 1, 3), std::invalid_argument);
}

TEST_CASE("s_d_empirical equals the per-prime definition at x = 1000") {
    double got = s_d_empirical(1000, 2, 1, 1);
    double expect = 0.0;
    for (std::uint64_t p = 3; p + 2 <= 1000; p += 2) {
        if (!naive_prime(p) || !naive_prime(p + 2)) continue;
        FactoredInteger f1 = factorize(p - 1);
        FactoredInteger f2 = factorize(p + 1);
        expect += static_cast<double>(euler_phi(f1)) / static_cast<double>(p - 1) *
                  static_cast<double>(euler_phi(f2)) / static_cast<double>(p + 1);
    }
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("model moments match the census sum") {
    RootSpec root = make_root_spec(2);
    auto [mu, sigma2] = model_moments(200000, 2, root);
    CensusRequest req;
    req.x = 200000;
    req.d = 2;
    req.g = root;
    req.with_moments = true;
    CensusReport report = count_census(req);
    CHECK(mu == doctest::Approx(report.final_row().Pi_sum).epsilon(1e-12));
    CHECK(sigma2 == doctest::Approx(report.sigma2).epsilon(1e-12));
    CHECK(sigma2 <= mu);
}

TEST_CASE("checkpoint file round trip and resume") {
    const char* path = "census_checkpoint_test.bin";
    CheckpointState state{123456, 789, 42, 3.25};
    write_checkpoint_file(path, state);
    auto back = read_checkpoint_file(path);
    REQUIRE(back.has_value());
    CHECK(back->x_reached == state.x_reached);
    CHECK(back->pi_d == state.pi_d);
    CHECK(back->pi_dg == state.pi_dg);
    CHECK(back->Pi_sum == state.Pi_sum);
    std::remove(path);
    CHECK_FALSE(read_checkpoint_file(path).has_value());

    // resuming from a checkpoint reproduces the straight run
    CensusRequest req;
    req.x = 400000;
    req.d = 2;
    req.g = make_root_spec(6);
    CensusReport full = count_census(req);

    CensusRequest half = req;
    half.x = 200000;
    CensusReport first = count_census(half);
    CensusRequest rest = req;
    rest.resume = CheckpointState{200000, first.final_row().pi_d,
                                  first.final_row().pi_dg, first.final_row().Pi_sum};
    CensusReport second = count_census(rest);
    CHECK(second.final_row().pi_d == full.final_row().pi_d);
    CHECK(second.final_row().pi_dg == full.final_row().pi_dg);
    CHECK(second.final_row().Pi_sum ==
          doctest::Approx(full.final_row().Pi_sum).epsilon(1e-12));
}
