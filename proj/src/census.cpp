#include "artin/census.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace artin {

namespace {

struct PairDetail {
    double r1 = 1.0; // phi(p-1)/(p-1)
    double r2 = 1.0; // phi(p+d-1)/(p+d-1)
    const std::vector<std::uint64_t>* primes1 = nullptr; // distinct primes of p-1
    const std::vector<std::uint64_t>* primes2 = nullptr;
};

void validate_gap(std::uint64_t d) {
    if (d == 0 || d % 2 != 0)
        throw std::invalid_argument("d must be a positive even integer");
}

std::vector<std::uint64_t> pair_base_primes(std::uint64_t x, std::uint64_t d) {
    auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x + d))) + 2;
    return primes_up_to(root);
}

// Sieve primality over [lo, hi + d) and report each pair p in [lo, hi),
// ascending. With want_factors, p-1 and p+d-1 are factored in bulk by
// dividing base primes out of the shifted interval; the leftover residual
// is then 1 or a single prime above sqrt.
void process_segment(std::uint64_t lo, std::uint64_t hi, std::uint64_t d,
                     const std::vector<std::uint64_t>& base_primes, bool want_factors,
                     const std::function<void(std::uint64_t, const PairDetail*)>& cb) {
    if (hi <= lo) return;
    const std::uint64_t span = hi + d - lo;
    std::vector<std::uint8_t> is_prime(span, 1);
    for (std::uint64_t q : base_primes) {
        if (q * q >= hi + d) break;
        std::uint64_t first = std::max(q * q, (lo + q - 1) / q * q);
        for (std::uint64_t m = first; m < hi + d; m += q) is_prime[m - lo] = 0;
    }

    std::vector<std::uint64_t> pairs;
    for (std::uint64_t p = lo | 1; p < hi; p += 2) {
        if (is_prime[p - lo] && is_prime[p + d - lo]) pairs.push_back(p);
    }
    if (pairs.empty()) return;

    if (!want_factors) {
        for (std::uint64_t p : pairs) cb(p, nullptr);
        return;
    }

    struct Slot {
        std::uint64_t residual;
        std::vector<std::uint64_t> primes;
    };
    const std::uint64_t jlo = lo - 1, jhi = hi + d - 1;
    std::vector<std::int32_t> slot_of(jhi - jlo, -1);
    std::vector<Slot> slots;
    slots.reserve(2 * pairs.size());
    auto add_slot = [&](std::uint64_t value) {
        if (slot_of[value - jlo] < 0) {
            slot_of[value - jlo] = static_cast<std::int32_t>(slots.size());
            slots.push_back(Slot{value, {}});
        }
    };
    for (std::uint64_t p : pairs) {
        add_slot(p - 1);
        add_slot(p + d - 1);
    }

    for (std::uint64_t q : base_primes) {
        std::uint64_t first = (jlo + q - 1) / q * q;
        for (std::uint64_t m = first; m < jhi; m += q) {
            std::int32_t s = slot_of[m - jlo];
            if (s < 0) continue;
            Slot& slot = slots[static_cast<std::size_t>(s)];
            if (slot.residual % q == 0) {
                slot.primes.push_back(q);
                while (slot.residual % q == 0) slot.residual /= q;
            }
        }
    }
    std::vector<double> ratios(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].residual > 1) slots[i].primes.push_back(slots[i].residual);
        double r = 1.0;
        for (std::uint64_t q : slots[i].primes) r *= 1.0 - 1.0 / static_cast<double>(q);
        ratios[i] = r;
    }

    for (std::uint64_t p : pairs) {
        std::size_t s1 = static_cast<std::size_t>(slot_of[p - 1 - jlo]);
        std::size_t s2 = static_cast<std::size_t>(slot_of[p + d - 1 - jlo]);
        PairDetail detail;
        detail.r1 = ratios[s1];
        detail.r2 = ratios[s2];
        detail.primes1 = &slots[s1].primes;
        detail.primes2 = &slots[s2].primes;
        cb(p, &detail);
    }
}

} // namespace

PrimePairStream::PrimePairStream(std::uint64_t x, std::uint64_t d, std::uint64_t segment_size)
    : x_(x), d_(d), segment_size_(segment_size), next_lo_(3) {
    validate_gap(d);
    if (x < 3 + d) throw std::invalid_argument("prime pair stream requires x >= 3 + d");
    base_primes_ = pair_base_primes(x, d);
}

void PrimePairStream::fill_buffer() {
    buffer_.clear();
    pos_ = 0;
    std::uint64_t pmax = x_ - d_;
    while (buffer_.empty() && next_lo_ <= pmax) {
        std::uint64_t hi = std::min(pmax + 1, next_lo_ + segment_size_);
        process_segment(next_lo_, hi, d_, base_primes_, false,
                        [&](std::uint64_t p, const PairDetail*) { buffer_.push_back(p); });
        next_lo_ = hi;
    }
}

std::optional<std::uint64_t> PrimePairStream::next() {
    if (pos_ >= buffer_.size()) {
        fill_buffer();
        if (buffer_.empty()) return std::nullopt;
    }
    return buffer_[pos_++];
}

CensusReport count_census(const CensusRequest& req) {
    validate_gap(req.d);
    if (req.segment_size < 2 * req.d)
        throw std::invalid_argument("segment_size must be at least 2d");
    for (std::uint64_t c : req.checkpoints)
        if (c > req.x) throw std::invalid_argument("checkpoint beyond x");

    CensusReport report;
    report.x = req.x;
    report.d = req.d;
    if (req.g) {
        report.g = req.g->g;
        report.blocked_warning = !classify(req.d, *req.g).admissible;
    }

    std::vector<std::uint64_t> cps = req.checkpoints;
    cps.push_back(req.x);
    std::sort(cps.begin(), cps.end());
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
    std::uint64_t resumed_x = req.resume ? req.resume->x_reached : 0;
    cps.erase(std::remove_if(cps.begin(), cps.end(),
                             [&](std::uint64_t c) { return c <= resumed_x && c != req.x; }),
              cps.end());
    const std::size_t ncp = cps.size();

    struct SegmentResult {
        std::vector<std::uint64_t> pi_d, pi_dg;
        std::vector<double> pi_sum;
        double sigma2 = 0.0;
        std::uint64_t violations = 0;
    };

    std::uint64_t pmin = 3;
    if (req.resume && req.resume->x_reached > req.d)
        pmin = std::max<std::uint64_t>(3, req.resume->x_reached - req.d + 1);
    std::uint64_t pmax = req.x >= 3 + req.d ? req.x - req.d : 0;

    std::size_t nseg = 0;
    if (pmax >= pmin) nseg = (pmax - pmin) / req.segment_size + 1;
    std::vector<SegmentResult> results(nseg);

    const bool want_factors = req.g.has_value() || req.with_moments;
    const std::vector<std::uint64_t> base_primes =
        nseg > 0 ? pair_base_primes(req.x, req.d) : std::vector<std::uint64_t>{};

    std::atomic<std::size_t> next_segment{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next_segment.fetch_add(1);
            if (i >= nseg) return;
            std::uint64_t lo = pmin + i * req.segment_size;
            std::uint64_t hi = std::min(pmax + 1, lo + req.segment_size);
            SegmentResult& res = results[i];
            res.pi_d.assign(ncp, 0);
            res.pi_dg.assign(ncp, 0);
            res.pi_sum.assign(ncp, 0.0);
            process_segment(lo, hi, req.d, base_primes, want_factors,
                [&](std::uint64_t p, const PairDetail* detail) {
                    std::size_t bucket = static_cast<std::size_t>(
                        std::lower_bound(cps.begin(), cps.end(), p + req.d) - cps.begin());
                    if (bucket >= ncp) return; // beyond the last checkpoint
                    res.pi_d[bucket] += 1;
                    if (!req.g) return;
                    const RootSpec& root = *req.g;
                    int dlt = delta(req.d, root, p);
                    double w = 4.0 * detail->r1 * detail->r2 * dlt;
                    res.pi_sum[bucket] += w;
                    if (req.with_moments) res.sigma2 += w * (1.0 - w);
                    bool counted = is_primitive_root(root.g, p, *detail->primes1) &&
                                   is_primitive_root(root.g, p + req.d, *detail->primes2);
                    if (counted) {
                        res.pi_dg[bucket] += 1;
                        if (dlt == 0) res.violations += 1;
                    }
                });
        }
    };

    unsigned nthreads = req.threads != 0 ? req.threads : std::thread::hardware_concurrency();
    if (nthreads == 0) nthreads = 1;
    nthreads = static_cast<unsigned>(std::min<std::size_t>(nthreads, std::max<std::size_t>(nseg, 1)));
    {
        std::vector<std::thread> pool;
        for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    }

    // deterministic merge: bucket totals accumulate in ascending segment order
    std::vector<std::uint64_t> pi_d_bucket(ncp, 0), pi_dg_bucket(ncp, 0);
    std::vector<double> pi_sum_bucket(ncp, 0.0);
    for (std::size_t b = 0; b < ncp; ++b) {
        for (const SegmentResult& res : results) {
            pi_d_bucket[b] += res.pi_d[b];
            pi_dg_bucket[b] += res.pi_dg[b];
            pi_sum_bucket[b] += res.pi_sum[b];
        }
    }
    for (const SegmentResult& res : results) {
        report.sigma2 += res.sigma2;
        report.delta_violations += res.violations;
    }

    std::uint64_t pi_d_total = req.resume ? req.resume->pi_d : 0;
    std::uint64_t pi_dg_total = req.resume ? req.resume->pi_dg : 0;
    double pi_sum_total = req.resume ? req.resume->Pi_sum : 0.0;
    for (std::size_t b = 0; b < ncp; ++b) {
        pi_d_total += pi_d_bucket[b];
        pi_dg_total += pi_dg_bucket[b];
        pi_sum_total += pi_sum_bucket[b];
        CheckpointRow row;
        row.x = cps[b];
        row.pi_d = pi_d_total;
        row.pi_dg = pi_dg_total;
        row.Pi_sum = pi_sum_total;
        row.e_proxy = (static_cast<double>(row.pi_dg) - row.Pi_sum) / 4.0;
        double lx = std::log(static_cast<double>(row.x));
        row.normalized_e = row.e_proxy / (static_cast<double>(row.x) / (lx * lx));
        row.ratio = row.pi_d > 0
            ? static_cast<double>(row.pi_dg) / static_cast<double>(row.pi_d)
            : 0.0;
        report.rows.push_back(row);
    }
    return report;
}

std::uint64_t count_pi_d_in_ap(std::uint64_t x, std::uint64_t d,
                               std::uint64_t a, std::uint64_t q) {
    validate_gap(d);
    if (q == 0 || std::gcd(a % q, q) != 1 || std::gcd((a + d) % q, q) != 1)
        throw std::invalid_argument("count_pi_d_in_ap: need (a,q) = (a+d,q) = 1");
    PrimePairStream stream(x, d);
    std::uint64_t count = 0;
    while (auto p = stream.next())
        if (*p % q == a % q) ++count;
    return count;
}

double s_d_empirical(std::uint64_t x, std::uint64_t d, std::uint64_t a, std::uint64_t f) {
    validate_gap(d);
    if (f == 0 || std::gcd(a % f, f) != 1 || std::gcd((a + d) % f, f) != 1)
        throw std::invalid_argument("s_d_empirical: need (a,f) = (a+d,f) = 1");
    if (x < 3 + d) return 0.0;
    const std::vector<std::uint64_t> base = pair_base_primes(x, d);
    const std::uint64_t segment = 1u << 20;
    double sum = 0.0;
    std::uint64_t pmax = x - d;
    for (std::uint64_t lo = 3; lo <= pmax; lo += segment) {
        std::uint64_t hi = std::min(pmax + 1, lo + segment);
        process_segment(lo, hi, d, base, true,
            [&](std::uint64_t p, const PairDetail* detail) {
                if (p % f == a % f) sum += detail->r1 * detail->r2;
            });
    }
    return sum;
}

std::pair<double, double> model_moments(std::uint64_t x, std::uint64_t d,
                                        const RootSpec& root) {
    CensusRequest req;
    req.x = x;
    req.d = d;
    req.g = root;
    req.with_moments = true;
    CensusReport report = count_census(req);
    return {report.final_row().Pi_sum, report.sigma2};
}

void write_checkpoint_file(const std::string& path, const CheckpointState& state) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open checkpoint file for writing: " + path);
    auto put_u64 = [&](std::uint64_t v) {
        unsigned char bytes[8];
        for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(v >> (8 * i));
        out.write(reinterpret_cast<const char*>(bytes), 8);
    };
    out.write("APC1", 4);
    put_u64(state.x_reached);
    put_u64(state.pi_d);
    put_u64(state.pi_dg);
    std::uint64_t bits;
    std::memcpy(&bits, &state.Pi_sum, 8);
    put_u64(bits);
}

std::optional<CheckpointState> read_checkpoint_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "APC1", 4) != 0)
        throw std::runtime_error("bad checkpoint magic in " + path);
    auto get_u64 = [&]() {
        unsigned char bytes[8];
        in.read(reinterpret_cast<char*>(bytes), 8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
        return v;
    };
    CheckpointState state;
    state.x_reached = get_u64();
    state.pi_d = get_u64();
    state.pi_dg = get_u64();
    std::uint64_t bits = get_u64();
    if (!in) throw std::runtime_error("truncated checkpoint file " + path);
    std::memcpy(&state.Pi_sum, &bits, 8);
    return state;
}

std::string CensusReport::to_csv() const {
    std::ostringstream out;
    out << "x,d,g,pi_d,pi_dg,ratio,Pi_sum,e_proxy,normalized_e\n";
    for (const CheckpointRow& row : rows) {
        out << row.x << "," << d << ",";
        if (g) out << *g;
        out << "," << row.pi_d << "," << row.pi_dg << "," << row.ratio << ","
            << row.Pi_sum << "," << row.e_proxy << "," << row.normalized_e << "\n";
    }
    return out.str();
}

std::string CensusReport::to_json() const {
    nlohmann::json j;
    j["x"] = x;
    j["d"] = d;
    if (g) j["g"] = *g;
    j["blocked_warning"] = blocked_warning;
    j["delta_violations"] = delta_violations;
    nlohmann::json rows_json = nlohmann::json::array();
    for (const CheckpointRow& row : rows) {
        rows_json.push_back({{"x", row.x},
                             {"pi_d", row.pi_d},
                             {"pi_dg", row.pi_dg},
                             {"ratio", row.ratio},
                             {"Pi_sum", row.Pi_sum},
                             {"e_proxy", row.e_proxy},
                             {"normalized_e", row.normalized_e}});
    }
    j["rows"] = rows_json;
    return j.dump(2);
}

} // namespace artin
