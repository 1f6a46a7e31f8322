// Command line front end: each subcommand reads a JSON config and writes a
// JSON (or CSV) result to --out or stdout. Exit codes: 0 on success, 1 on
// domain errors (infeasible levels, unsupported geometry, bad data), 2 on
// config and IO errors.

#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "nptx/errors.h"
#include "nptx/harness.h"
#include "nptx/json_io.h"
#include "nptx/lowerbound.h"
#include "nptx/np_oracle.h"

namespace {

struct CommonOpts {
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int jobs = 0;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config, "Path to the JSON config")->required();
    cmd->add_option("--out", opts.out, "Output path (stdout when omitted)");
    cmd->add_option("--seed", opts.seed, "Override the config's base seed")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--jobs", opts.jobs, "Worker threads for sweeps");
    cmd->add_flag("--quiet", opts.quiet, "Suppress progress notes on stderr");
}

void emit(const CommonOpts& opts, const std::string& body) {
    if (opts.out.empty()) {
        std::cout << body;
        if (body.empty() || body.back() != '\n') std::cout << '\n';
    } else {
        nptx::write_text_file(opts.out, body);
    }
}

nlohmann::json load_config(const CommonOpts& opts) {
    const std::string text = nptx::read_text_file(opts.config);
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw nptx::ConfigError(std::string("config parse failed: ") + e.what());
    }
}

int run_solve(const CommonOpts& opts) {
    const auto j = load_config(opts);
    nptx::NPProblem prob;
    prob.mu0 = nptx::distribution_from_json(j.at("mu0").dump());
    prob.mu1 = nptx::distribution_from_json(j.at("mu1").dump());
    prob.alpha = j.at("alpha").get<double>();
    emit(opts, nptx::to_json_string(nptx::np_solution(prob)));
    return 0;
}

int run_equiv(const CommonOpts& opts) {
    const auto j = load_config(opts);
    const auto mu0 = nptx::distribution_from_json(j.at("mu0").dump());
    const auto mu1s = nptx::distribution_from_json(j.at("mu1s").dump());
    const auto mu1t = nptx::distribution_from_json(j.at("mu1t").dump());
    const double alpha = j.at("alpha").get<double>();
    const bool restrict_ustar = j.value("restrict_ustar", true);
    const double tol = j.value("tol", 1e-9);
    emit(opts, nptx::to_json_string(
                   nptx::check_equivalence(mu0, mu1s, mu1t, alpha, restrict_ustar, tol)));
    return 0;
}

int run_exponent(const CommonOpts& opts) {
    const auto j = load_config(opts);
    const auto sc = nptx::scenario_from_json(j.at("scenario").dump());
    const int per_param = j.value("per_param", 512);
    const auto ctx = nptx::make_exponent_context(sc);
    std::vector<nptx::ExcessPair> pairs;
    for (const auto& h : nptx::exponent_grid(ctx, per_param))
        pairs.push_back(nptx::excess_pair(ctx, h));
    emit(opts, nptx::exponent_report_json(ctx, nptx::fit_exponent(pairs)));
    return 0;
}

int run_simulate(const CommonOpts& opts) {
    auto cfg = nptx::sweep_config_from_json(nptx::read_text_file(opts.config));
    if (opts.seed_set) cfg.base_seed = opts.seed;
    if (opts.jobs > 0) cfg.jobs = opts.jobs;
    if (!opts.quiet) {
        const std::size_t trials = cfg.n0_grid.size() * cfg.ns_grid.size() *
                                   cfg.nt_grid.size() *
                                   static_cast<std::size_t>(cfg.replicates);
        std::cerr << "simulate: " << trials << " trials on " << cfg.jobs << " thread(s)\n";
    }
    const auto rows = nptx::run_sweep(cfg);
    std::ostringstream csv;
    nptx::write_csv(rows, csv);
    emit(opts, csv.str());
    return 0;
}

int run_rates(const CommonOpts& opts) {
    const auto j = load_config(opts);
    const std::string csv_path = j.at("csv").get<std::string>();
    const std::string axis_name = j.at("axis").get<std::string>();
    nptx::SweepAxis axis;
    if (axis_name == "n0")
        axis = nptx::SweepAxis::n0;
    else if (axis_name == "n_s")
        axis = nptx::SweepAxis::n_s;
    else if (axis_name == "n_t")
        axis = nptx::SweepAxis::n_t;
    else
        throw nptx::ConfigError("rates: axis must be n0, n_s, or n_t");
    std::istringstream is(nptx::read_text_file(csv_path));
    emit(opts, nptx::to_json_string(nptx::fit_rate(nptx::read_csv(is), axis)));
    return 0;
}

int run_lowerbound(const CommonOpts& opts) {
    const auto req = nptx::lowerbound_request_from_json(nptx::read_text_file(opts.config));
    nptx::SplitRng rng(opts.seed_set ? opts.seed : 0, nptx::hash_stream_id("packing"));
    const auto fam = nptx::build_family(req.variant, req.d_h, req.alpha, req.rho, req.n_s,
                                        req.n_t, req.c1, req.delta_cap, rng);
    if (!opts.quiet)
        std::cerr << "lowerbound: " << fam.instances.size() << " instances at gap "
                  << fam.epsilon << "\n";
    emit(opts, nptx::family_report_json(fam, nptx::verify_family(fam)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Neyman-Pearson classification with source/target transfer"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::function<int(const CommonOpts&)> action;

    struct Sub {
        const char* name;
        const char* help;
        int (*fn)(const CommonOpts&);
    };
    const Sub subs[] = {
        {"solve", "Most-powerful test for one null/alternative pair", run_solve},
        {"equiv", "Do source solutions transfer to the target problem?", run_equiv},
        {"exponent", "Transfer-exponent certificate for a scenario", run_exponent},
        {"simulate", "Sweep the adaptive sample-selection rule, write CSV", run_simulate},
        {"rates", "Log-log rate fit over a sweep CSV", run_rates},
        {"lowerbound", "Build and audit a hard instance family", run_lowerbound},
    };
    for (const auto& s : subs) {
        CLI::App* cmd = app.add_subcommand(s.name, s.help);
        add_common(cmd, opts);
        cmd->callback([&action, fn = s.fn]() { action = fn; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return action(opts);
    } catch (const nptx::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const nptx::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
