#pragma once

#include <iosfwd>
#include <vector>

#include "nptx/adaptive.h"

namespace nptx {

struct SweepConfig {
    TransferScenario scenario;
    std::vector<std::int64_t> n0_grid;
    std::vector<std::int64_t> ns_grid;
    std::vector<std::int64_t> nt_grid;
    int replicates = 1;
    std::uint64_t base_seed = 0;
    AdaptiveConfig adaptive;
    int jobs = 1;
};

// Runs every (n0, n_s, n_t) cell of the grid for the requested number of
// replicates. Each trial draws from its own counter stream keyed by the
// scenario id, the cell, and the replicate index, so results do not depend
// on scheduling or on jobs. Rows come back sorted by
// (scenario, n0, n_s, n_t, seed) with seed = replicate index; a trial that
// throws a domain error is kept as a status "error" row.
std::vector<TrialResult> run_sweep(const SweepConfig& cfg);

// Exact column set, 17-significant-digit doubles, "nan" for fields a row
// does not define. Reruns of the same config are byte-identical.
void write_csv(const std::vector<TrialResult>& rows, std::ostream& os);
std::vector<TrialResult> read_csv(std::istream& is);

enum class SweepAxis { n0, n_s, n_t };

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    int n_points = 0;
};

// Least-squares line through (ln n, ln mean excess) over the chosen axis,
// using rows with status "ok". Grid values whose mean excess is zero carry
// no information and are dropped; fewer than 4 usable points is an
// InfeasibleError.
RateFit fit_rate(const std::vector<TrialResult>& rows, SweepAxis axis);

}  // namespace nptx
