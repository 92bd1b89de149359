#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/config.hpp"

namespace upb {

using ParamMap = std::map<std::string, double>;

// Named strength objectives over family parameters.
//   sixparam_closed    closed form; axes x (equal-angle, angles = acos(x)) or
//                      thetaA/gammaA/thetaB/gammaB individually
//   sixparam_generic   measured strength of the constructed six-parameter set
//   tri_f              |f(x, y)| of the sub-family closed form
//   tri_closed         [f(x, y)]^3
//   subfamily_generic  measured strength of the constructed sub-family set,
//                      theta = acos(x), alpha = acos(y)
//   quadratic_selftest 1 - (x - 0.3)^2, optimizer plumbing check only
double evaluate_objective(const std::string& id, const ParamMap& params, const RunConfig& cfg);

bool objective_known(const std::string& id);
// Objectives admitted by grid_scan (everything except the self-test).
bool objective_scannable(const std::string& id);

struct AxisSpec {
    std::string name;
    double lo = 0.0, hi = 0.0;
    int steps = 0;  // >= 2, endpoints included
};

struct ScanGrid {
    std::string objective_id;
    ParamMap fixed;
    std::vector<AxisSpec> axes;
    std::vector<double> values;   // row-major, axes[0] slowest
    std::vector<char> failed;     // evaluation failures, recorded as value 0
    long failures = 0;

    std::size_t point_count() const;
    double axis_value(std::size_t axis, int step) const;
    // Decode a flat index into per-axis steps.
    std::vector<int> decode(std::size_t flat) const;
    ParamMap point_at(std::size_t flat) const;
};

// Dense deterministic evaluation; failures are flagged and scanning continues.
// cfg.threads > 1 splits the index range; output is identical at any thread
// count (disjoint writes, fixed ordering).
ScanGrid grid_scan(const std::string& objective_id, const ParamMap& fixed,
                   const std::vector<AxisSpec>& axes, const RunConfig& cfg);

// CSV rendering: header of axis names plus "f", one row per point in grid
// order, 12 significant digits.
std::string scan_to_csv(const ScanGrid& grid);

struct GridMaximum {
    std::vector<int> idx;
    ParamMap point;
    double value = 0.0;
};

// Grid points strictly above all axis-neighbors (boundary points compare
// against available neighbors only), sorted by descending value, ties broken
// lexicographically by point. Failed points never qualify.
std::vector<GridMaximum> find_local_maxima(const ScanGrid& grid);

struct BoxSpec {
    std::string name;
    double lo = 0.0, hi = 0.0;
};

struct OptimizationResult {
    struct Maximum {
        ParamMap point;
        double value = 0.0;
        std::string kind;  // "global" or "local"
    };
    std::vector<Maximum> maxima;  // descending value; global first
    long evaluations = 0;
    bool converged = false;
    double step_final = 0.0;
    std::vector<double> accepted_values;  // nondecreasing objective trace
};

// Coordinate pattern search: probe +/- step along each axis, move on any
// improvement, halve the step when no axis improves; stop when step < tol or
// max_iter is reached. Probes are clamped to the box.
OptimizationResult refine_max(const std::string& objective_id, const ParamMap& fixed,
                              const std::vector<BoxSpec>& box, const ParamMap& start,
                              double step0, double tol, int max_iter, const RunConfig& cfg);

// Multi-start refinement from every grid local maximum; results deduplicated
// within Euclidean distance 1e-3 in parameter space and sorted by value.
OptimizationResult refine_from_grid(const ScanGrid& grid, double step0, double tol, int max_iter,
                                    const RunConfig& cfg);

}  // namespace upb
