#pragma once

// Empirical counting engine: segmented sieving over [3, x+d], bulk
// factorization of p-1 and p+d-1 through interval division, primitive-root
// tests per pair, and the weighted sum Pi_{d,g}(x) with its E-residual.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "artin/admissibility.hpp"
#include "artin/core_arith.hpp"

namespace artin {

struct CheckpointState {
    std::uint64_t x_reached = 0; // all pairs with p+d <= x_reached are counted
    std::uint64_t pi_d = 0;
    std::uint64_t pi_dg = 0;
    double Pi_sum = 0.0;
};

struct CensusRequest {
    std::uint64_t x = 10'000'000;
    std::uint64_t d = 2;
    std::optional<RootSpec> g;
    std::vector<std::uint64_t> checkpoints; // x is always appended
    std::uint64_t segment_size = 1u << 20;
    unsigned threads = 0; // 0 = hardware concurrency
    bool with_moments = false;
    std::optional<CheckpointState> resume;
};

struct CheckpointRow {
    std::uint64_t x = 0;
    std::uint64_t pi_d = 0;
    std::uint64_t pi_dg = 0;
    double Pi_sum = 0.0;
    double e_proxy = 0.0;      // (pi_dg - Pi_sum) / 4
    double normalized_e = 0.0; // e_proxy / (x / (ln x)^2)
    double ratio = 0.0;        // pi_dg / pi_d
};

struct CensusReport {
    std::uint64_t x = 0;
    std::uint64_t d = 2;
    std::optional<std::int64_t> g;
    std::vector<CheckpointRow> rows;
    bool blocked_warning = false;       // g present but [d,g] is blocked
    std::uint64_t delta_violations = 0; // pairs counted with Delta = 0
    double sigma2 = 0.0;                // filled when with_moments is set

    const CheckpointRow& final_row() const { return rows.back(); }
    std::string to_csv() const;
    std::string to_json() const;
};

// Ascending stream of p with p, p+d odd primes and p+d <= x.
class PrimePairStream {
public:
    PrimePairStream(std::uint64_t x, std::uint64_t d, std::uint64_t segment_size = 1u << 20);
    std::optional<std::uint64_t> next();

private:
    void fill_buffer();

    std::uint64_t x_;
    std::uint64_t d_;
    std::uint64_t segment_size_;
    std::uint64_t next_lo_;
    std::vector<std::uint64_t> base_primes_;
    std::vector<std::uint64_t> buffer_;
    std::size_t pos_ = 0;
};

CensusReport count_census(const CensusRequest& req);

std::uint64_t count_pi_d_in_ap(std::uint64_t x, std::uint64_t d,
                               std::uint64_t a, std::uint64_t q);

// S_d(x;a,f): the phi-ratio weighted sum over pairs p = a (mod f).
double s_d_empirical(std::uint64_t x, std::uint64_t d, std::uint64_t a, std::uint64_t f);

// Poisson-binomial moments of the pair model: mu = Pi_sum, sigma2 = sum w(1-w).
std::pair<double, double> model_moments(std::uint64_t x, std::uint64_t d,
                                        const RootSpec& root);

// Binary checkpoint format: "APC1", u64 x_reached, u64 pi_d, u64 pi_dg,
// f64 Pi_sum, little-endian.
void write_checkpoint_file(const std::string& path, const CheckpointState& state);
std::optional<CheckpointState> read_checkpoint_file(const std::string& path);

} // namespace artin
