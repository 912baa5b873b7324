// artin_pairs: admissibility classification, density constants, predictions,
// sieve censuses, Table-1 style verification, and identity sweeps for Artin
// prime pairs (p, p+d) with a common primitive root g.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "artin/admissibility.hpp"
#include "artin/census.hpp"
#include "artin/constants.hpp"
#include "artin/core_arith.hpp"
#include "artin/sweeps.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBlocked = 2;
constexpr int kExitVerifyFailed = 3;

struct Options {
    std::int64_t g = 0;
    std::uint64_t d = 0;
    std::uint64_t x = 10'000'000;
    std::uint64_t prime_bound = 100'000'000;
    std::uint64_t segment_size = 1'048'576;
    unsigned threads = 0;
    std::string format = "table";
    std::string out_path;
    std::string resume_path;
    bool deterministic = false;
    std::uint64_t max_gtilde = 2001;
    std::uint64_t max_d = 60;
    bool inject_fault = false;
};

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(out_path, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file: " + out_path);
        out << text;
        if (!text.empty() && text.back() != '\n') out << '\n';
    }
}

std::string timestamp_line(bool deterministic) {
    if (deterministic) return "";
    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return std::string("# generated_at ") + buf + "\n";
}

unsigned resolve_threads(unsigned flag_value) {
    if (flag_value != 0) return flag_value;
    if (const char* env = std::getenv("ARTIN_PAIRS_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 0; // library default: hardware concurrency
}

std::string clause_text(artin::BlockedBy tag) {
    using artin::BlockedBy;
    switch (tag) {
        case BlockedBy::c1: return "g0 = 5 and d = 2,3 (mod 5)";
        case BlockedBy::c2a: return "g0 | d, d = 2 (mod 4) and g0 = 3 (mod 4)";
        case BlockedBy::c2b: return "g0 | d, d = 4 (mod 8) and g0 = 2 (mod 4)";
        case BlockedBy::c3a: return "g0 ! d, g0 | 3d, g0 = 1 (mod 4)";
        case BlockedBy::c3b: return "g0 ! d, g0 | 3d, g0 = 3 (mod 4) and d = 0 (mod 4)";
        case BlockedBy::c3c: return "g0 ! d, g0 | 3d, g0 = 2 (mod 4) and d = 0 (mod 8)";
    }
    return "";
}

int cmd_admissible(const Options& opt) {
    artin::RootSpec root = artin::make_root_spec(opt.g);
    artin::AdmissibilityVerdict verdict = artin::classify(opt.d, root);
    if (verdict.admissible) {
        std::cout << "Admissible\n";
        return kExitOk;
    }
    std::cout << "Blocked(" << artin::to_string(*verdict.blocked_by) << "): "
              << clause_text(*verdict.blocked_by) << "\n";
    return kExitBlocked;
}

int cmd_constants(const Options& opt) {
    artin::RootSpec root = artin::make_root_spec(opt.g);
    artin::EulerProductSettings settings{opt.prime_bound, true};
    artin::ConstantsReport report;
    try {
        report = artin::predicted_ratio(opt.d, root, settings);
    } catch (const artin::NotApplicableError& e) {
        std::cerr << "blocked pair: " << e.what() << "\n";
        return kExitBlocked;
    }
    if (opt.format == "json") {
        emit(report.to_json(), opt.out_path);
    } else if (opt.format == "csv") {
        emit("g,d,pi_dg,pi_d,ratio,predicted\n" + report.to_csv_row() + "\n", opt.out_path);
    } else {
        std::ostringstream out;
        out << std::setprecision(10);
        out << "pair            [d=" << report.d << ", g=" << root.g << "]\n"
            << "g0, gs, g~      " << root.g0 << ", " << root.gs << ", " << root.g_tilde << "\n"
            << "C2              " << report.C2 << "\n"
            << "C_{d,g~}        " << report.C_dg << "\n"
            << "|phi_d(g~)|     " << report.phi_size << "\n";
        for (const auto& [key, value] : report.omega)
            out << "Omega(" << key.first << "," << key.second << ")     " << value << "\n";
        out << "A               " << report.A << "\n"
            << "predicted ratio " << report.predicted_ratio << "\n"
            << "prime bound     " << report.prime_bound_used << "\n"
            << "tail estimate   " << report.estimated_tail_error << "\n";
        emit(out.str(), opt.out_path);
    }
    return kExitOk;
}

int cmd_predict(const Options& opt) {
    artin::RootSpec root = artin::make_root_spec(opt.g);
    artin::EulerProductSettings settings{opt.prime_bound, true};
    try {
        double pd = artin::predicted_pi_d(static_cast<double>(opt.x), opt.d, settings);
        double pdg = artin::predicted_pi_dg(static_cast<double>(opt.x), opt.d, root, settings);
        std::ostringstream out;
        out << std::setprecision(10);
        out << "x                   " << opt.x << "\n"
            << "predicted pi_d      " << pd << "\n"
            << "predicted pi_dg     " << pdg << "\n"
            << "predicted ratio     " << pdg / pd << "\n";
        emit(out.str(), opt.out_path);
    } catch (const artin::NotApplicableError& e) {
        std::cerr << "blocked pair: " << e.what() << "\n";
        return kExitBlocked;
    }
    return kExitOk;
}

int cmd_census(const Options& opt, bool have_g) {
    artin::CensusRequest req;
    req.x = opt.x;
    req.d = opt.d;
    req.segment_size = opt.segment_size;
    req.threads = resolve_threads(opt.threads);
    if (have_g) req.g = artin::make_root_spec(opt.g);
    if (!opt.resume_path.empty()) req.resume = artin::read_checkpoint_file(opt.resume_path);

    artin::CensusReport report = artin::count_census(req);
    if (report.blocked_warning)
        std::cerr << "warning: [d,g] is blocked; pi_dg should stay 0\n";

    if (opt.format == "json") {
        emit(report.to_json(), opt.out_path);
    } else if (opt.format == "csv") {
        emit(timestamp_line(opt.deterministic) + report.to_csv(), opt.out_path);
    } else {
        std::ostringstream out;
        out << timestamp_line(opt.deterministic);
        out << std::left << std::setw(14) << "x" << std::setw(12) << "pi_d"
            << std::setw(12) << "pi_dg" << std::setw(12) << "ratio"
            << std::setw(14) << "Pi_sum" << std::setw(14) << "e_proxy"
            << "normalized_e\n";
        for (const auto& row : report.rows) {
            out << std::left << std::setw(14) << row.x << std::setw(12) << row.pi_d
                << std::setw(12) << row.pi_dg << std::setw(12) << std::setprecision(6)
                << row.ratio << std::setw(14) << row.Pi_sum << std::setw(14)
                << row.e_proxy << row.normalized_e << "\n";
        }
        emit(out.str(), opt.out_path);
    }
    if (!opt.resume_path.empty()) {
        const auto& last = report.final_row();
        artin::write_checkpoint_file(
            opt.resume_path,
            artin::CheckpointState{last.x, last.pi_d, last.pi_dg, last.Pi_sum});
    }
    return kExitOk;
}

int cmd_verify_table1(const Options& opt) {
    if (opt.x < 10'000) {
        std::cerr << "verify-table1 requires x >= 10^4\n";
        return kExitUsage;
    }
    artin::EulerProductSettings settings{opt.prime_bound, true};
    std::ostringstream out;
    out << timestamp_line(opt.deterministic);
    if (opt.format == "csv") {
        out << "g,d,pi_dg,pi_d,ratio,predicted\n";
    } else {
        out << std::left << std::setw(6) << "g" << std::setw(6) << "d"
            << std::setw(12) << "pi_dg" << std::setw(12) << "pi_d"
            << std::setw(12) << "ratio" << "predicted\n";
    }
    for (std::int64_t g : {2, 3, 5, 6, 7}) {
        artin::RootSpec root = artin::make_root_spec(g);
        for (std::uint64_t d : {2, 4, 6, 8}) {
            if (!artin::classify(d, root).admissible) continue;
            artin::ConstantsReport constants = artin::predicted_ratio(d, root, settings);
            artin::CensusRequest req;
            req.x = opt.x;
            req.d = d;
            req.g = root;
            req.segment_size = opt.segment_size;
            req.threads = resolve_threads(opt.threads);
            artin::CensusReport census = artin::count_census(req);
            const auto& row = census.final_row();
            if (opt.format == "csv") {
                out << g << "," << d << "," << row.pi_dg << "," << row.pi_d << ","
                    << std::fixed << std::setprecision(6) << row.ratio << ","
                    << constants.predicted_ratio << "\n";
                out.unsetf(std::ios::fixed);
            } else {
                out << std::left << std::setw(6) << g << std::setw(6) << d
                    << std::setw(12) << row.pi_dg << std::setw(12) << row.pi_d
                    << std::setw(12) << std::fixed << std::setprecision(6) << row.ratio
                    << constants.predicted_ratio << "\n";
                out.unsetf(std::ios::fixed);
            }
        }
    }
    emit(out.str(), opt.out_path);
    return kExitOk;
}

int cmd_identities(const Options& opt) {
    struct Sweep {
        const char* name;
        std::optional<std::string> result;
    };
    std::uint64_t omega_gtilde = std::min<std::uint64_t>(opt.max_gtilde, 501);
    std::uint64_t omega_d = std::min<std::uint64_t>(opt.max_d, 30);
    std::vector<Sweep> sweeps;
    sweeps.push_back({"phi closed forms", artin::sweep_phi_closed_forms(opt.max_gtilde, opt.max_d)});
    sweeps.push_back({"character sums", artin::sweep_char_sums(omega_gtilde, omega_d)});
    sweeps.push_back({"classifier vs brute force", artin::sweep_classifier(40, 50)});
    sweeps.push_back({"omega closed form",
                      artin::sweep_omega(omega_gtilde, omega_d, opt.inject_fault)});
    bool failed = false;
    for (const Sweep& sweep : sweeps) {
        if (sweep.result) {
            std::cout << "FAIL " << sweep.name << ": " << *sweep.result << "\n";
            failed = true;
        } else {
            std::cout << "PASS " << sweep.name << "\n";
        }
    }
    return failed ? kExitVerifyFailed : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Artin prime pair toolkit"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool need_d, bool need_g) {
        if (need_d) cmd->add_option("-d", opt.d, "even gap d")->required();
        else cmd->add_option("-d", opt.d, "even gap d");
        if (need_g) cmd->add_option("-g", opt.g, "root g")->required();
        else cmd->add_option("-g", opt.g, "root g");
        cmd->add_option("-x", opt.x, "upper bound x");
        cmd->add_option("--prime-bound", opt.prime_bound, "Euler product truncation");
        cmd->add_option("--segment-size", opt.segment_size, "sieve segment size");
        cmd->add_option("--threads", opt.threads, "worker threads");
        cmd->add_option("--format", opt.format, "table|csv|json")
            ->check(CLI::IsMember({"table", "csv", "json"}));
        cmd->add_option("--out", opt.out_path, "output path");
        cmd->add_flag("--deterministic", opt.deterministic, "suppress timestamps");
        cmd->add_option("--resume", opt.resume_path, "checkpoint file path");
    };

    CLI::App* admissible = app.add_subcommand("admissible", "classify a pair [d,g]");
    add_common(admissible, true, true);
    CLI::App* constants = app.add_subcommand("constants", "evaluate the density constants");
    add_common(constants, true, true);
    CLI::App* predict = app.add_subcommand("predict", "predicted counts at x");
    add_common(predict, true, true);
    CLI::App* census = app.add_subcommand("census", "sieve census of pi_d / pi_dg");
    add_common(census, true, false);
    CLI::App* verify = app.add_subcommand("verify-table1", "reproduce the 13-pair table");
    add_common(verify, false, false);
    CLI::App* identities = app.add_subcommand("identities", "run the property sweeps");
    identities->add_option("--max-gtilde", opt.max_gtilde, "sweep bound for g~");
    identities->add_option("--max-d", opt.max_d, "sweep bound for d");
    identities->add_flag("--inject-fault", opt.inject_fault,
                         "test hook: negate a closed-form sign");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (admissible->parsed()) return cmd_admissible(opt);
        if (constants->parsed()) return cmd_constants(opt);
        if (predict->parsed()) return cmd_predict(opt);
        if (census->parsed()) return cmd_census(opt, census->count("-g") > 0);
        if (verify->parsed()) return cmd_verify_table1(opt);
        if (identities->parsed()) return cmd_identities(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
