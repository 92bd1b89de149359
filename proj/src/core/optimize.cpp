#include "core/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

#include "core/strength.hpp"

namespace upb {

namespace {

double param_or(const ParamMap& m, const std::string& key, double fallback) {
    const auto it = m.find(key);
    return it == m.end() ? fallback : it->second;
}

SixParam sixparam_from(const ParamMap& m) {
    SixParam p;
    const auto x = m.find("x");
    if (x != m.end()) {
        const double angle = std::acos(std::clamp(x->second, -1.0, 1.0));
        p.theta_a = p.gamma_a = p.theta_b = p.gamma_b = angle;
    } else {
        const double golden = std::acos((std::sqrt(5.0) - 1.0) / 2.0);
        p.theta_a = param_or(m, "thetaA", golden);
        p.gamma_a = param_or(m, "gammaA", golden);
        p.theta_b = param_or(m, "thetaB", golden);
        p.gamma_b = param_or(m, "gammaB", golden);
    }
    p.phi_a = param_or(m, "phiA", 0.0);
    p.phi_b = param_or(m, "phiB", 0.0);
    return p;
}

double require(const ParamMap& m, const std::string& key) {
    const auto it = m.find(key);
    if (it == m.end())
        throw std::invalid_argument("objective: missing parameter '" + key + "'");
    return it->second;
}

}  // namespace

double evaluate_objective(const std::string& id, const ParamMap& params, const RunConfig& cfg) {
    if (id == "sixparam_closed") return strength_sixparam_closed(sixparam_from(params));
    if (id == "sixparam_generic")
        return strength_generic(make_six_param(sixparam_from(params)), cfg.tol_zero).value;
    if (id == "tri_f") return strength_tri_f(require(params, "x"), param_or(params, "y", 1.0));
    if (id == "tri_closed")
        return strength_tri_closed(require(params, "x"), param_or(params, "y", 1.0));
    if (id == "subfamily_generic") {
        const double theta = std::acos(std::clamp(require(params, "x"), -1.0, 1.0));
        const double alpha = std::acos(std::clamp(param_or(params, "y", 1.0), -1.0, 1.0));
        return strength_generic(make_subfamily(theta, alpha), cfg.tol_zero).value;
    }
    if (id == "quadratic_selftest") {
        const double x = require(params, "x");
        return 1.0 - (x - 0.3) * (x - 0.3);
    }
    throw std::invalid_argument("unknown objective '" + id + "'");
}

bool objective_known(const std::string& id) {
    static const char* ids[] = {"sixparam_closed", "sixparam_generic", "tri_f",
                                "tri_closed",      "subfamily_generic", "quadratic_selftest"};
    for (const char* s : ids)
        if (id == s) return true;
    return false;
}

bool objective_scannable(const std::string& id) {
    return objective_known(id) && id != "quadratic_selftest";
}

std::size_t ScanGrid::point_count() const {
    std::size_t n = 1;
    for (const AxisSpec& a : axes) n *= static_cast<std::size_t>(a.steps);
    return n;
}

double ScanGrid::axis_value(std::size_t axis, int step) const {
    const AxisSpec& a = axes[axis];
    return a.lo + static_cast<double>(step) * (a.hi - a.lo) / static_cast<double>(a.steps - 1);
}

std::vector<int> ScanGrid::decode(std::size_t flat) const {
    std::vector<int> idx(axes.size(), 0);
    for (std::size_t a = axes.size(); a-- > 0;) {
        idx[a] = static_cast<int>(flat % static_cast<std::size_t>(axes[a].steps));
        flat /= static_cast<std::size_t>(axes[a].steps);
    }
    return idx;
}

ParamMap ScanGrid::point_at(std::size_t flat) const {
    const std::vector<int> idx = decode(flat);
    ParamMap p = fixed;
    for (std::size_t a = 0; a < axes.size(); ++a) p[axes[a].name] = axis_value(a, idx[a]);
    return p;
}

ScanGrid grid_scan(const std::string& objective_id, const ParamMap& fixed,
                   const std::vector<AxisSpec>& axes, const RunConfig& cfg) {
    if (!objective_scannable(objective_id))
        throw std::invalid_argument("grid_scan: objective '" + objective_id + "' is not scannable");
    if (axes.empty()) throw std::invalid_argument("grid_scan: need at least one axis");
    for (const AxisSpec& a : axes)
        if (a.steps < 2) throw std::invalid_argument("grid_scan: axis '" + a.name + "' needs >= 2 steps");

    ScanGrid grid;
    grid.objective_id = objective_id;
    grid.fixed = fixed;
    grid.axes = axes;
    const std::size_t total = grid.point_count();
    grid.values.assign(total, 0.0);
    grid.failed.assign(total, 0);

    auto worker = [&](std::size_t first, std::size_t last) {
        for (std::size_t t = first; t < last; ++t) {
            try {
                grid.values[t] = evaluate_objective(objective_id, grid.point_at(t), cfg);
            } catch (const std::exception&) {
                grid.values[t] = 0.0;
                grid.failed[t] = 1;
            }
        }
    };

    const int threads = std::max(1, cfg.threads);
    if (threads == 1 || total < 64) {
        worker(0, total);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (total + static_cast<std::size_t>(threads) - 1) / static_cast<std::size_t>(threads);
        for (int t = 0; t < threads; ++t) {
            const std::size_t first = static_cast<std::size_t>(t) * chunk;
            if (first >= total) break;
            pool.emplace_back(worker, first, std::min(first + chunk, total));
        }
        for (std::thread& th : pool) th.join();
    }
    for (char f : grid.failed) grid.failures += f;
    return grid;
}

std::string scan_to_csv(const ScanGrid& grid) {
    std::string out;
    for (const AxisSpec& a : grid.axes) {
        out += a.name;
        out += ',';
    }
    out += "f\n";
    char buf[64];
    const std::size_t total = grid.point_count();
    for (std::size_t t = 0; t < total; ++t) {
        const std::vector<int> idx = grid.decode(t);
        for (std::size_t a = 0; a < grid.axes.size(); ++a) {
            std::snprintf(buf, sizeof buf, "%.12g", grid.axis_value(a, idx[a]));
            out += buf;
            out += ',';
        }
        std::snprintf(buf, sizeof buf, "%.12g", grid.values[t]);
        out += buf;
        out += '\n';
    }
    return out;
}

std::vector<GridMaximum> find_local_maxima(const ScanGrid& grid) {
    std::vector<GridMaximum> out;
    const std::size_t total = grid.point_count();
    std::vector<std::size_t> stride(grid.axes.size(), 1);
    for (std::size_t a = grid.axes.size(); a-- > 1;)
        stride[a - 1] = stride[a] * static_cast<std::size_t>(grid.axes[a].steps);

    for (std::size_t t = 0; t < total; ++t) {
        if (grid.failed[t]) continue;
        const double v = grid.values[t];
        const std::vector<int> idx = grid.decode(t);
        bool strict_max = true;
        for (std::size_t a = 0; a < grid.axes.size() && strict_max; ++a) {
            if (idx[a] > 0 && grid.values[t - stride[a]] >= v) strict_max = false;
            if (idx[a] + 1 < grid.axes[a].steps && grid.values[t + stride[a]] >= v) strict_max = false;
        }
        if (strict_max) {
            GridMaximum m;
            m.idx = idx;
            m.point = grid.point_at(t);
            m.value = v;
            out.push_back(std::move(m));
        }
    }
    std::sort(out.begin(), out.end(), [](const GridMaximum& a, const GridMaximum& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.point < b.point;
    });
    return out;
}

namespace {

double eval_or_lowest(const std::string& id, const ParamMap& p, const RunConfig& cfg, long& evals) {
    ++evals;
    try {
        return evaluate_objective(id, p, cfg);
    } catch (const std::exception&) {
        return -std::numeric_limits<double>::infinity();
    }
}

}  // namespace

OptimizationResult refine_max(const std::string& objective_id, const ParamMap& fixed,
                              const std::vector<BoxSpec>& box, const ParamMap& start,
                              double step0, double tol, int max_iter, const RunConfig& cfg) {
    if (box.empty()) throw std::invalid_argument("refine_max: empty search box");
    if (step0 <= 0.0 || tol <= 0.0)
        throw std::invalid_argument("refine_max: step0 and tol must be positive");

    ParamMap point = fixed;
    for (const BoxSpec& b : box) {
        double v = param_or(start, b.name, 0.5 * (b.lo + b.hi));
        point[b.name] = std::clamp(v, b.lo, b.hi);
    }

    OptimizationResult res;
    double best = eval_or_lowest(objective_id, point, cfg, res.evaluations);
    if (!std::isfinite(best))
        throw std::invalid_argument("refine_max: objective not finite at the start point");
    res.accepted_values.push_back(best);

    double step = step0;
    for (int iter = 0; iter < max_iter && step >= tol; ++iter) {
        bool improved = false;
        for (const BoxSpec& b : box) {
            for (const double dir : {+1.0, -1.0}) {
                const double cur = point[b.name];
                const double cand = std::clamp(cur + dir * step, b.lo, b.hi);
                if (cand == cur) continue;
                ParamMap probe = point;
                probe[b.name] = cand;
                const double v = eval_or_lowest(objective_id, probe, cfg, res.evaluations);
                if (v > best) {
                    best = v;
                    point = std::move(probe);
                    res.accepted_values.push_back(best);
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    res.converged = step < tol;
    res.step_final = step;

    OptimizationResult::Maximum m;
    for (const BoxSpec& b : box) m.point[b.name] = point[b.name];
    m.value = best;
    m.kind = "global";
    res.maxima.push_back(std::move(m));
    return res;
}

OptimizationResult refine_from_grid(const ScanGrid& grid, double step0, double tol, int max_iter,
                                    const RunConfig& cfg) {
    std::vector<BoxSpec> box;
    double max_step = 0.0;
    for (const AxisSpec& a : grid.axes) {
        box.push_back({a.name, a.lo, a.hi});
        max_step = std::max(max_step, std::abs(a.hi - a.lo) / static_cast<double>(a.steps - 1));
    }
    if (step0 <= 0.0) step0 = max_step;

    const std::vector<GridMaximum> seeds = find_local_maxima(grid);
    OptimizationResult merged;
    merged.converged = true;
    std::vector<OptimizationResult::Maximum> found;
    for (const GridMaximum& seed : seeds) {
        OptimizationResult r =
            refine_max(grid.objective_id, grid.fixed, box, seed.point, step0, tol, max_iter, cfg);
        merged.evaluations += r.evaluations;
        merged.converged = merged.converged && r.converged;
        merged.step_final = std::max(merged.step_final, r.step_final);
        found.push_back(r.maxima.front());
    }

    // Deduplicate refined points within Euclidean distance 1e-3.
    std::sort(found.begin(), found.end(),
              [](const OptimizationResult::Maximum& a, const OptimizationResult::Maximum& b) {
                  if (a.value != b.value) return a.value > b.value;
                  return a.point < b.point;
              });
    for (const auto& cand : found) {
        bool dup = false;
        for (const auto& kept : merged.maxima) {
            double d2 = 0.0;
            for (const auto& [name, v] : cand.point) {
                const double dv = v - kept.point.at(name);
                d2 += dv * dv;
            }
            if (std::sqrt(d2) < 1e-3) {
                dup = true;
                break;
            }
        }
        if (!dup) merged.maxima.push_back(cand);
    }
    for (std::size_t i = 0; i < merged.maxima.size(); ++i)
        merged.maxima[i].kind = i == 0 ? "global" : "local";
    return merged;
}

}  // namespace upb
