#include "nptx/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>

#include "nptx/errors.h"
#include "nptx/exponent.h"

namespace nptx {

namespace {

std::uint64_t combine(std::uint64_t h, std::uint64_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

struct TrialKey {
    std::int64_t n0, n_s, n_t;
    int rep;
};

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    // Strip a platform-dependent sign off nan.
    if (std::isnan(x)) return "nan";
    return buf;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

const char* kHeader =
    "scenario,n0,n_s,n_t,seed,chose_source,excess_target,type1_true,type1_emp,"
    "epsilon0,a_ns,a_nt,margin,status";

}  // namespace

std::vector<TrialResult> run_sweep(const SweepConfig& cfg) {
    validate(cfg.scenario);
    if (cfg.n0_grid.empty() || cfg.ns_grid.empty() || cfg.nt_grid.empty())
        throw ConfigError("run_sweep: empty sample-size grid");
    if (cfg.replicates < 1) throw ConfigError("run_sweep: replicates must be >= 1");
    if (cfg.jobs < 1) throw ConfigError("run_sweep: jobs must be >= 1");
    if (cfg.scenario.id.find_first_of(",\n") != std::string::npos)
        throw ConfigError("run_sweep: scenario id must not contain commas or newlines");
    for (auto ns : cfg.ns_grid)
        for (auto nt : cfg.nt_grid)
            if (ns == 0 && nt == 0)
                throw ConfigError("run_sweep: a grid cell requests no labeled samples at all");

    const double target_opt = class_optimal_risk(cfg.scenario.mu0, cfg.scenario.mu1T,
                                                 cfg.scenario.alpha, cfg.scenario.cls);

    std::vector<TrialKey> keys;
    for (auto n0 : cfg.n0_grid)
        for (auto ns : cfg.ns_grid)
            for (auto nt : cfg.nt_grid)
                for (int rep = 0; rep < cfg.replicates; ++rep) keys.push_back({n0, ns, nt, rep});

    std::vector<TrialResult> rows(keys.size());
    const std::uint64_t scenario_hash = hash_stream_id(cfg.scenario.id.c_str());
    std::atomic<std::size_t> next{0};

    const auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= keys.size()) break;
            const TrialKey& k = keys[i];
            std::uint64_t stream = scenario_hash;
            stream = combine(stream, static_cast<std::uint64_t>(k.n0));
            stream = combine(stream, static_cast<std::uint64_t>(k.n_s));
            stream = combine(stream, static_cast<std::uint64_t>(k.n_t));
            stream = combine(stream, static_cast<std::uint64_t>(k.rep));
            SplitRng rng(cfg.base_seed, stream);
            TrialResult row;
            try {
                row = run_adaptive(cfg.scenario, k.n0, k.n_s, k.n_t, cfg.adaptive, rng,
                                   &target_opt);
            } catch (const Error&) {
                constexpr double nan = std::numeric_limits<double>::quiet_NaN();
                row.scenario = cfg.scenario.id;
                row.n0 = k.n0;
                row.n_s = k.n_s;
                row.n_t = k.n_t;
                row.chose_source = -1;
                row.excess_target = row.type1_true = row.type1_emp = nan;
                row.epsilon0 = row.a_ns = row.a_nt = row.margin = nan;
                row.status = "error";
            }
            row.seed = static_cast<std::uint64_t>(k.rep);
            rows[i] = std::move(row);
        }
    };

    const int jobs = std::min<int>(cfg.jobs, static_cast<int>(keys.size()));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::sort(rows.begin(), rows.end(), [](const TrialResult& a, const TrialResult& b) {
        return std::tie(a.scenario, a.n0, a.n_s, a.n_t, a.seed) <
               std::tie(b.scenario, b.n0, b.n_s, b.n_t, b.seed);
    });
    return rows;
}

void write_csv(const std::vector<TrialResult>& rows, std::ostream& os) {
    os << kHeader << "\n";
    for (const auto& r : rows) {
        if (r.scenario.find_first_of(",\n") != std::string::npos ||
            r.status.find_first_of(",\n") != std::string::npos)
            throw ConfigError("write_csv: field contains a comma or newline");
        os << r.scenario << ',' << r.n0 << ',' << r.n_s << ',' << r.n_t << ',' << r.seed << ','
           << r.chose_source << ',' << fmt_double(r.excess_target) << ','
           << fmt_double(r.type1_true) << ',' << fmt_double(r.type1_emp) << ','
           << fmt_double(r.epsilon0) << ',' << fmt_double(r.a_ns) << ',' << fmt_double(r.a_nt)
           << ',' << fmt_double(r.margin) << ',' << r.status << "\n";
    }
}

std::vector<TrialResult> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("read_csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader) throw ConfigError("read_csv: unexpected header");
    std::vector<TrialResult> rows;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split_line(line);
        if (f.size() != 14) throw ConfigError("read_csv: wrong column count");
        TrialResult r;
        r.scenario = f[0];
        try {
            r.n0 = std::stoll(f[1]);
            r.n_s = std::stoll(f[2]);
            r.n_t = std::stoll(f[3]);
            r.seed = std::stoull(f[4]);
            r.chose_source = std::stoi(f[5]);
            r.excess_target = std::strtod(f[6].c_str(), nullptr);
            r.type1_true = std::strtod(f[7].c_str(), nullptr);
            r.type1_emp = std::strtod(f[8].c_str(), nullptr);
            r.epsilon0 = std::strtod(f[9].c_str(), nullptr);
            r.a_ns = std::strtod(f[10].c_str(), nullptr);
            r.a_nt = std::strtod(f[11].c_str(), nullptr);
            r.margin = std::strtod(f[12].c_str(), nullptr);
        } catch (const std::exception&) {
            throw ConfigError("read_csv: malformed numeric field");
        }
        r.status = f[13];
        rows.push_back(std::move(r));
    }
    return rows;
}

RateFit fit_rate(const std::vector<TrialResult>& rows, SweepAxis axis) {
    std::map<std::int64_t, std::pair<double, std::int64_t>> cells;
    for (const auto& r : rows) {
        if (r.status != "ok") continue;
        const std::int64_t n = axis == SweepAxis::n0 ? r.n0
                               : axis == SweepAxis::n_s ? r.n_s
                                                        : r.n_t;
        auto& cell = cells[n];
        cell.first += r.excess_target;
        cell.second += 1;
    }
    std::vector<std::pair<double, double>> pts;
    for (const auto& [n, cell] : cells) {
        if (n <= 0) continue;
        const double mean = cell.first / static_cast<double>(cell.second);
        if (mean > 0.0) pts.push_back({std::log(static_cast<double>(n)), std::log(mean)});
    }
    if (pts.size() < 4)
        throw InfeasibleError("fit_rate: fewer than 4 grid points with positive mean excess");

    double sx = 0, sy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
    }
    const double n = static_cast<double>(pts.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (sxx == 0.0) throw InfeasibleError("fit_rate: degenerate axis (single grid value)");
    RateFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.n_points = static_cast<int>(pts.size());
    const double ss_res = syy - fit.slope * sxy;
    fit.r2 = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
    return fit;
}

}  // namespace nptx
