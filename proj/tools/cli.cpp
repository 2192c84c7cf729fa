// Command-line front end: analytic bounds, regime maps, Monte Carlo runs of
// the bipartite and multiparty protocols, and the statevector verification.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "enthash/bounds.hpp"
#include "enthash/graph.hpp"
#include "enthash/hashing.hpp"
#include "enthash/multiparty.hpp"
#include "enthash/oracle.hpp"
#include "enthash/regimes.hpp"
#include "enthash/verify.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace enthash;

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CLI::ValidationError("--out", "cannot open " + path);
    out << text;
}

std::string csv_row(const std::vector<std::pair<const char*, double>>& cols) {
    std::string header, row;
    char buf[64];
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) {
            header += ',';
            row += ',';
        }
        header += cols[i].first;
        std::snprintf(buf, sizeof buf, "%.17g", cols[i].second);
        row += buf;
    }
    return header + "\n" + row + "\n";
}

const char* branch_name(hashing::Branch b) {
    switch (b) {
        case hashing::Branch::aborted: return "aborted";
        case hashing::Branch::ok: return "ok";
        default: return "error";
    }
}

const char* cause_name(hashing::Cause c) {
    switch (c) {
        case hashing::Cause::pe_reject: return "pe_reject";
        case hashing::Cause::outside_likely: return "outside_likely";
        case hashing::Cause::ambiguous: return "ambiguous";
        default: return "none";
    }
}

json result_json(const hashing::MonteCarloResult& r) {
    json j;
    j["trials"] = r.trials;
    j["aborted"] = r.aborted;
    j["ok"] = r.ok;
    j["errors"] = r.errors;
    j["outside_likely"] = r.outside_likely;
    j["ambiguous"] = r.ambiguous;
    j["unresolved"] = r.unresolved;
    j["accept_rate"] = r.accept_rate();
    j["error_rate_given_accept"] = r.error_rate_given_accept();
    j["mean_pe_statistic"] = r.mean_pe_statistic;
    return j;
}

std::string result_csv(const hashing::MonteCarloResult& r) {
    return csv_row({{"trials", static_cast<double>(r.trials)},
                    {"aborted", static_cast<double>(r.aborted)},
                    {"ok", static_cast<double>(r.ok)},
                    {"errors", static_cast<double>(r.errors)},
                    {"outside_likely", static_cast<double>(r.outside_likely)},
                    {"ambiguous", static_cast<double>(r.ambiguous)},
                    {"unresolved", static_cast<double>(r.unresolved)},
                    {"accept_rate", r.accept_rate()},
                    {"error_rate_given_accept", r.error_rate_given_accept()},
                    {"mean_pe_statistic", r.mean_pe_statistic}});
}

unsigned resolve_threads(unsigned requested) {
    return requested ? requested : hashing::default_thread_count();
}

struct BoundsArgs {
    double n = 0, k = 1.0, f_min = 0, f_max = 0;
    std::optional<double> delta;
    int d = 4;
    bool exact = false;
    std::string format = "json", out;
};

void run_bounds(const BoundsArgs& a) {
    bounds::BoundInputs in;
    in.n = a.n;
    in.k = a.k;
    in.f_min = a.f_min;
    in.f_max = a.f_max;
    in.delta = a.delta;
    in.d = a.d;
    auto mode = a.exact ? bounds::PostselectMode::exact
                        : bounds::PostselectMode::power;
    bounds::BoundReport r = bounds::evaluate(in, mode);

    if (a.format == "csv") {
        write_text(a.out, csv_row({{"n", r.n},
                                   {"k", r.k},
                                   {"f_min", r.f_min},
                                   {"f_max", r.f_max},
                                   {"delta", r.delta},
                                   {"d", static_cast<double>(r.d)},
                                   {"log_p1", r.log_p1},
                                   {"log_p2", r.log_p2},
                                   {"log_p3", r.log_p3},
                                   {"log_iid", r.log_iid},
                                   {"postselect_factor_log", r.postselect_factor_log},
                                   {"diamond_bound_log", r.diamond_bound_log},
                                   {"yield", static_cast<double>(r.yield)}}));
        return;
    }
    json j;
    j["n"] = r.n;
    j["k"] = r.k;
    j["f_min"] = r.f_min;
    j["f_max"] = r.f_max;
    j["delta"] = r.delta;
    j["d"] = r.d;
    j["log_p1"] = r.log_p1;
    j["log_p2"] = r.log_p2;
    j["log_p3"] = r.log_p3;
    j["log_iid"] = r.log_iid;
    j["postselect_factor_log"] = r.postselect_factor_log;
    j["diamond_bound_log"] = r.diamond_bound_log;
    j["yield"] = r.yield;
    write_text(a.out, j.dump(2) + "\n");
}

struct GridArgs {
    std::string alpha = "0:1:0.01", q = "0:1:0.01", out;
};

regimes::GridSpec parse_grid(const std::string& s, const char* flag) {
    regimes::GridSpec g;
    char colon1 = 0, colon2 = 0;
    std::istringstream in(s);
    if (!(in >> g.lo >> colon1 >> g.hi >> colon2 >> g.step) || colon1 != ':' ||
        colon2 != ':' || !(in >> std::ws).eof())
        throw CLI::ValidationError(flag, "expected lo:hi:step, got " + s);
    return g;
}

void run_grid(const GridArgs& a) {
    auto grid = regimes::classify_grid(parse_grid(a.alpha, "--alpha-grid"),
                                       parse_grid(a.q, "--q-grid"));
    std::ostringstream os;
    regimes::write_grid_csv(os, grid);
    write_text(a.out, os.str());
}

struct SimArgs {
    std::size_t n = 0;
    double k = 0;
    double f_min = 0, f_max = 0;
    std::optional<double> fid;
    std::vector<double> state;
    std::optional<double> delta;
    std::optional<std::size_t> rounds;
    std::string pe_mode = "calibrated", decode_mode = "typical";
    int budget_log2 = 20;
    std::uint64_t trials = 1000, seed = 1;
    unsigned threads = 0;
    std::string format = "json", out, transcript;
};

BellDiagonal sim_state(const SimArgs& a) {
    if (!a.state.empty()) {
        if (a.state.size() != 4)
            throw CLI::ValidationError("--state", "expected four probabilities");
        BellDiagonal s{{a.state[0], a.state[1], a.state[2], a.state[3]}};
        s.validate();
        return s;
    }
    if (!a.fid) throw CLI::ValidationError("simulate", "need --fid or --state");
    return werner(*a.fid);
}

void write_transcript(const std::string& path,
                      const std::vector<hashing::Outcome>& outcomes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CLI::ValidationError("--transcript", "cannot open " + path);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const hashing::Outcome& o = outcomes[i];
        json j;
        j["trial"] = i;
        j["branch"] = branch_name(o.branch);
        j["cause"] = cause_name(o.cause);
        j["unresolved"] = o.ambiguity_unresolved;
        j["pe_mean"] = o.pe_mean;
        j["yield"] = o.yield;
        j["cost_bits"] = o.truth_cost_bits;
        out << j.dump() << "\n";
    }
}

void run_simulate(const SimArgs& a) {
    hashing::ProtocolConfig cfg;
    cfg.n = a.n;
    cfg.k = a.k;
    cfg.window = pe::Window::promise(a.f_min, a.f_max);
    cfg.pe_mode = a.pe_mode == "raw" ? pe::Mode::raw : pe::Mode::calibrated;
    cfg.delta = a.delta;
    cfg.rounds = a.rounds;
    cfg.decode_mode = a.decode_mode == "exhaustive"
                          ? hashing::DecodeMode::exhaustive
                          : hashing::DecodeMode::typical_check;
    cfg.decode_budget_log2 = a.budget_log2;

    BellDiagonal state = sim_state(a);
    std::vector<hashing::Outcome> outcomes;
    hashing::MonteCarloResult r = hashing::monte_carlo(
        cfg, state, a.trials, a.seed, resolve_threads(a.threads),
        a.transcript.empty() ? nullptr : &outcomes);

    if (!a.transcript.empty()) write_transcript(a.transcript, outcomes);
    if (a.format == "csv") {
        write_text(a.out, result_csv(r));
        return;
    }
    json j;
    j["n"] = cfg.n;
    j["k"] = cfg.k;
    j["f_min"] = a.f_min;
    j["f_max"] = a.f_max;
    j["delta"] = cfg.resolved_delta();
    j["rounds"] = cfg.resolved_rounds();
    j["yield"] = cfg.resolved_yield();
    j["seed"] = a.seed;
    j["result"] = result_json(r);
    write_text(a.out, j.dump(2) + "\n");
}

struct MultiArgs {
    std::string graph_file, lambda_file;
    std::size_t n = 0;
    double k = 0;
    std::optional<double> delta;
    std::optional<std::size_t> rounds_p1, rounds_p2;
    double eps_mix = 1e-3, pe_eta = 0.1;
    bool no_pe = false;
    int budget_log2 = 20;
    std::uint64_t trials = 1000, seed = 1;
    unsigned threads = 0;
    std::string format = "json", out, transcript;
};

std::vector<double> read_lambda(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--lambda-file", "cannot open " + path);
    std::vector<double> lam;
    double v = 0;
    while (in >> v) lam.push_back(v);
    if (!in.eof())
        throw CLI::ValidationError("--lambda-file", "non-numeric entry in " + path);
    return lam;
}

void run_multi(const MultiArgs& a) {
    std::ifstream gin(a.graph_file);
    if (!gin) throw CLI::ValidationError("--graph", "cannot open " + a.graph_file);
    graph::TwoColorable g = graph::TwoColorable::parse(gin);
    std::vector<double> lam = read_lambda(a.lambda_file);

    multi::Config cfg;
    cfg.n = a.n;
    cfg.k = a.k;
    cfg.delta = a.delta;
    cfg.rounds_p1 = a.rounds_p1;
    cfg.rounds_p2 = a.rounds_p2;
    cfg.eps_mix = a.eps_mix;
    cfg.pe_eta = a.pe_eta;
    cfg.pe_enabled = !a.no_pe;
    cfg.decode_budget_log2 = a.budget_log2;

    std::vector<multi::Outcome> outcomes;
    hashing::MonteCarloResult r = multi::monte_carlo(
        cfg, g, lam, a.trials, a.seed, resolve_threads(a.threads),
        a.transcript.empty() ? nullptr : &outcomes);

    if (!a.transcript.empty()) {
        std::ofstream out(a.transcript, std::ios::binary);
        if (!out)
            throw CLI::ValidationError("--transcript", "cannot open " + a.transcript);
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            const multi::Outcome& o = outcomes[i];
            json j;
            j["trial"] = i;
            j["branch"] = branch_name(o.branch);
            j["cause"] = cause_name(o.cause);
            j["unresolved"] = o.ambiguity_unresolved;
            j["pe_max_deviation"] = o.pe_max_deviation;
            j["yield"] = o.yield;
            j["failed_component"] = o.failed_component;
            out << j.dump() << "\n";
        }
    }
    if (a.format == "csv") {
        write_text(a.out, result_csv(r));
        return;
    }
    json j;
    j["n"] = cfg.n;
    j["k"] = cfg.k;
    j["vertices"] = g.vertices();
    j["n_a"] = g.n_a();
    j["n_b"] = g.n_b();
    j["delta"] = cfg.resolved_delta();
    j["eps_mix"] = cfg.eps_mix;
    j["pe_eta"] = cfg.pe_eta;
    j["seed"] = a.seed;
    j["result"] = result_json(r);
    write_text(a.out, j.dump(2) + "\n");
}

int run_verify(int max_vertices) {
    oracle::VerifyReport r =
        oracle::run_verification(oracle::VerifyHooks::production(), max_vertices);
    for (const auto& c : r.checks) {
        std::printf("%-6s %-20s %8llu cases", c.passed ? "ok" : "FAILED",
                    c.name.c_str(), static_cast<unsigned long long>(c.cases));
        if (!c.passed) std::printf("  %s", c.detail.c_str());
        std::printf("\n");
    }
    return r.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"noisy entanglement hashing: bounds, regime maps, simulators"};
    app.require_subcommand(1);
    app.set_config("--config")->configurable(false);

    BoundsArgs ba;
    CLI::App* bounds_cmd =
        app.add_subcommand("bounds", "evaluate the analytic failure bounds");
    bounds_cmd->add_option("--n", ba.n, "hashing block size")->required();
    bounds_cmd->add_option("--k", ba.k, "parameter-estimation overhead factor");
    bounds_cmd->add_option("--fmin", ba.f_min, "promised fidelity lower edge")
        ->required();
    bounds_cmd->add_option("--fmax", ba.f_max, "promised fidelity upper edge")
        ->required();
    bounds_cmd->add_option("--delta", ba.delta, "entropy slack (default n^-1/5)");
    bounds_cmd->add_option("--d", ba.d, "output dimension per held system");
    bounds_cmd->add_flag("--exact", ba.exact,
                         "exact binomial post-selection factor");
    bounds_cmd->add_option("--format", ba.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    bounds_cmd->add_option("--out", ba.out, "output file (default stdout)");

    GridArgs ga;
    CLI::App* grid_cmd =
        app.add_subcommand("regime-map", "classify the alpha x q rectangle");
    grid_cmd->add_option("--alpha-grid", ga.alpha, "lo:hi:step for alpha");
    grid_cmd->add_option("--q-grid", ga.q, "lo:hi:step for q");
    grid_cmd->add_option("--out", ga.out, "output CSV (default stdout)");

    SimArgs sa;
    CLI::App* sim_cmd =
        app.add_subcommand("simulate", "Monte Carlo of the bipartite protocol");
    sim_cmd->add_option("--n", sa.n, "hashing block size")->required();
    sim_cmd->add_option("--k", sa.k, "PE overhead factor");
    sim_cmd->add_option("--fmin", sa.f_min, "promised fidelity lower edge")
        ->required();
    sim_cmd->add_option("--fmax", sa.f_max, "promised fidelity upper edge")
        ->required();
    CLI::Option* fid_opt =
        sim_cmd->add_option("--fid", sa.fid, "Werner fidelity of the source");
    sim_cmd->add_option("--state", sa.state,
                        "explicit Bell-diagonal probabilities p00 p01 p10 p11")
        ->expected(4)
        ->excludes(fid_opt);
    sim_cmd->add_option("--delta", sa.delta, "entropy slack (default n^-1/5)");
    sim_cmd->add_option("--rounds", sa.rounds, "parity rounds (default n - yield)");
    sim_cmd->add_option("--pe-mode", sa.pe_mode, "raw or calibrated")
        ->check(CLI::IsMember({"raw", "calibrated"}));
    sim_cmd->add_option("--decode-mode", sa.decode_mode, "exhaustive or typical")
        ->check(CLI::IsMember({"exhaustive", "typical"}));
    sim_cmd->add_option("--budget-log2", sa.budget_log2, "decode search budget");
    sim_cmd->add_option("--trials", sa.trials, "Monte Carlo trials");
    sim_cmd->add_option("--seed", sa.seed, "master seed");
    sim_cmd->add_option("--threads", sa.threads, "worker threads (0 = auto)");
    sim_cmd->add_option("--format", sa.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sim_cmd->add_option("--out", sa.out, "output file (default stdout)");
    sim_cmd->add_option("--transcript", sa.transcript,
                        "per-trial JSON lines file");

    MultiArgs ma;
    CLI::App* multi_cmd = app.add_subcommand(
        "simulate-multi", "Monte Carlo of the multiparty protocol");
    multi_cmd->add_option("--graph", ma.graph_file, "graph file: N, then u v lines")
        ->required();
    multi_cmd->add_option("--lambda-file", ma.lambda_file,
                          "2^N source probabilities, whitespace separated")
        ->required();
    multi_cmd->add_option("--n", ma.n, "hashing copies")->required();
    multi_cmd->add_option("--k", ma.k, "PE overhead factor");
    multi_cmd->add_option("--delta", ma.delta, "entropy slack (default n^-1/4)");
    multi_cmd->add_option("--rounds-p1", ma.rounds_p1, "P1 round quota");
    multi_cmd->add_option("--rounds-p2", ma.rounds_p2, "P2 round quota");
    multi_cmd->add_option("--eps-mix", ma.eps_mix, "identity admixture");
    multi_cmd->add_option("--pe-eta", ma.pe_eta, "frequency-test half width");
    multi_cmd->add_flag("--no-pe", ma.no_pe, "skip the frequency test");
    multi_cmd->add_option("--budget-log2", ma.budget_log2, "decode search budget");
    multi_cmd->add_option("--trials", ma.trials, "Monte Carlo trials");
    multi_cmd->add_option("--seed", ma.seed, "master seed");
    multi_cmd->add_option("--threads", ma.threads, "worker threads (0 = auto)");
    multi_cmd->add_option("--format", ma.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    multi_cmd->add_option("--out", ma.out, "output file (default stdout)");
    multi_cmd->add_option("--transcript", ma.transcript,
                          "per-trial JSON lines file");

    int max_vertices = 4;
    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "statevector cross-checks of the label algebra");
    verify_cmd->add_option("--max-vertices", max_vertices,
                           "largest graph order to sweep (2N qubits each)")
        ->check(CLI::Range(1, 6));

    CLI11_PARSE(app, argc, argv);

    try {
        if (bounds_cmd->parsed()) run_bounds(ba);
        if (grid_cmd->parsed()) run_grid(ga);
        if (sim_cmd->parsed()) run_simulate(sa);
        if (multi_cmd->parsed()) run_multi(ma);
        if (verify_cmd->parsed()) return run_verify(max_vertices);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
