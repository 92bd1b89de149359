#include "upb/upb.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <string>

#include <json.hpp>

#include "core/basis.hpp"
#include "core/errors.hpp"
#include "core/json_io.hpp"
#include "core/optimize.hpp"
#include "core/states.hpp"
#include "core/strength.hpp"
#include "core/verify.hpp"

struct upb_basis {
    upb::ProductBasisSet set;
};

namespace {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

upb_status fail(upb_status code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

// Run a callable, mapping the core exception taxonomy onto status codes.
template <typename F>
upb_status guarded(F&& fn) {
    try {
        g_last_error.clear();
        fn();
        return UPB_OK;
    } catch (const io_error& e) {
        return fail(UPB_ERR_IO, e.what());
    } catch (const upb::too_large_error& e) {
        return fail(UPB_ERR_TOO_LARGE, e.what());
    } catch (const upb::nonconvergence_error& e) {
        return fail(UPB_ERR_NUMERIC, e.what());
    } catch (const std::domain_error& e) {
        return fail(UPB_ERR_PRECONDITION, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(UPB_ERR_INVALID_ARGUMENT, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(UPB_ERR_PARSE, e.what());
    } catch (const std::bad_alloc&) {
        return fail(UPB_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(UPB_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(UPB_ERR_INTERNAL, "unknown error");
    }
}

upb::RunConfig to_core(const upb_config* cfg) {
    upb::RunConfig out;
    if (cfg) {
        out.tol_zero = cfg->tol_zero;
        out.tol_rank = cfg->tol_rank;
        out.tol_ppt = cfg->tol_ppt;
        out.max_members = cfg->max_members;
        out.threads = cfg->threads;
        out.seed = cfg->seed;
    }
    if (out.tol_zero <= 0 || out.tol_rank <= 0 || out.tol_ppt <= 0)
        throw std::invalid_argument("config: tolerances must be positive");
    return out;
}

const upb::ProductBasisSet& deref(const upb_basis* b) {
    if (!b) throw std::invalid_argument("null basis handle");
    return b->set;
}

upb::ParamMap param_map_from(const nlohmann::json& j) {
    upb::ParamMap out;
    if (j.is_null()) return out;
    for (const auto& [key, value] : j.items()) out[key] = value.get<double>();
    return out;
}

std::vector<upb::AxisSpec> axes_from(const nlohmann::json& j) {
    std::vector<upb::AxisSpec> out;
    for (const auto& a : j)
        out.push_back({a.at("name").get<std::string>(), a.at("lo").get<double>(),
                       a.at("hi").get<double>(), a.at("steps").get<int>()});
    return out;
}

upb_status make_basis(upb_basis** out, upb::ProductBasisSet&& set) {
    if (!out) return fail(UPB_ERR_INVALID_ARGUMENT, "null output pointer");
    return guarded([&] { *out = new upb_basis{std::move(set)}; });
}

}  // namespace

extern "C" {

const char* upb_version(void) { return "1.0.0"; }

const char* upb_last_error(void) { return g_last_error.c_str(); }

void upb_config_init(upb_config* cfg) {
    if (!cfg) return;
    const upb::RunConfig d;
    cfg->tol_zero = d.tol_zero;
    cfg->tol_rank = d.tol_rank;
    cfg->tol_ppt = d.tol_ppt;
    cfg->max_members = d.max_members;
    cfg->threads = d.threads;
    cfg->seed = d.seed;
}

void upb_basis_free(upb_basis* b) { delete b; }

void upb_string_free(char* s) { delete[] s; }

upb_status upb_construct_pyramid(upb_basis** out) {
    upb::ProductBasisSet set;
    const upb_status rc = guarded([&] { set = upb::make_pyramid(); });
    return rc != UPB_OK ? rc : make_basis(out, std::move(set));
}

upb_status upb_construct_tiles(upb_basis** out) {
    upb::ProductBasisSet set;
    const upb_status rc = guarded([&] { set = upb::make_tiles(); });
    return rc != UPB_OK ? rc : make_basis(out, std::move(set));
}

upb_status upb_construct_six_param(double theta_a, double gamma_a, double phi_a, double theta_b,
                                   double gamma_b, double phi_b, upb_basis** out) {
    upb::ProductBasisSet set;
    const upb_status rc = guarded([&] {
        set = upb::make_six_param({theta_a, gamma_a, phi_a, theta_b, gamma_b, phi_b});
    });
    return rc != UPB_OK ? rc : make_basis(out, std::move(set));
}

upb_status upb_construct_gen_pyramid7(int m, upb_basis** out) {
    upb::ProductBasisSet set;
    const upb_status rc = guarded([&] { set = upb::make_gen_pyramid7(m); });
    return rc != UPB_OK ? rc : make_basis(out, std::move(set));
}

upb_status upb_construct_tripartite(const double params[21], double prenorms_out[3],
                                    upb_basis** out) {
    upb::ProductBasisSet set;
    const upb_status rc = guarded([&] {
        if (!params) throw std::invalid_argument("null parameter array");
        upb::TriParam p;
        upb::TriBlock* blocks[3] = {&p.v, &p.w, &p.u};
        for (int b = 0; b < 3; ++b) {
            const double* q = params + 7 * b;
            *blocks[b] = {q[0], q[1], q[2], q[3], q[4], q[5], q[6]};
        }
        std::vector<double> prenorms;
        set = upb::make_tripartite(p, &prenorms);
        if (prenorms_out)
            for (int b = 0; b < 3; ++b) prenorms_out[b] = prenorms[static_cast<std::size_t>(b)];
    });
    return rc != UPB_OK ? rc : make_basis(out, std::move(set));
}

upb_status upb_construct_subfamily(double theta, double alpha, upb_basis** out) {
    upb::ProductBasisSet set;
    const upb_status rc = guarded([&] { set = upb::make_subfamily(theta, alpha); });
    return rc != UPB_OK ? rc : make_basis(out, std::move(set));
}

upb_status upb_construct_tensor(const upb_basis* a, const upb_basis* b, upb_basis** out) {
    upb::ProductBasisSet set;
    const upb_status rc = guarded([&] { set = upb::tensor_product_upb(deref(a), deref(b)); });
    return rc != UPB_OK ? rc : make_basis(out, std::move(set));
}

int upb_basis_parties(const upb_basis* b) { return b ? b->set.parties() : -1; }

int upb_basis_members(const upb_basis* b) { return b ? b->set.size() : -1; }

int upb_basis_dim(const upb_basis* b, int party) {
    if (!b || party < 0 || party >= b->set.parties()) return -1;
    return b->set.dims[static_cast<std::size_t>(party)];
}

upb_status upb_basis_label(const upb_basis* b, char** out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("null output pointer");
        *out = dup_string(deref(b).label);
    });
}

upb_status upb_basis_to_json(const upb_basis* b, char** out_json) {
    return guarded([&] {
        if (!out_json) throw std::invalid_argument("null output pointer");
        *out_json = dup_string(upb::basis_to_json(deref(b)));
    });
}

upb_status upb_basis_from_json(const char* json_text, upb_basis** out) {
    upb::ProductBasisSet set;
    const upb_status rc = guarded([&] {
        if (!json_text) throw std::invalid_argument("null document text");
        set = upb::basis_from_json(json_text);
    });
    return rc != UPB_OK ? rc : make_basis(out, std::move(set));
}

upb_status upb_verify(const upb_basis* b, const upb_config* cfg, int* is_upb_out,
                      char** report_json) {
    return guarded([&] {
        const upb::RunConfig rc = to_core(cfg);
        const upb::UpbReport rep = upb::is_upb(deref(b), rc);
        if (is_upb_out) *is_upb_out = rep.is_upb() ? 1 : 0;
        if (report_json) *report_json = dup_string(upb::upb_report_to_json(rep, deref(b), rc));
    });
}

upb_status upb_strength(const upb_basis* b, const char* pattern_mode, const upb_basis* ref_a,
                        const upb_basis* ref_b, double closed_value, const upb_config* cfg,
                        char** report_json) {
    return guarded([&] {
        const upb::RunConfig rc = to_core(cfg);
        const upb::ProductBasisSet& set = deref(b);
        const std::string mode = pattern_mode ? pattern_mode : "measured";

        upb::StrengthReport rep;
        if (mode == "measured") {
            rep = upb::strength_generic(set, rc.tol_zero);
        } else if (mode == "reference") {
            const upb::OrthPattern ref = upb::zero_pattern(deref(ref_a), rc.tol_zero);
            rep = upb::strength_generic(set, ref, rc.tol_zero);
        } else if (mode == "product") {
            const upb::ProductBasisSet* fa = ref_a ? &deref(ref_a) : set.factor_a.get();
            const upb::ProductBasisSet* fb = ref_b ? &deref(ref_b) : set.factor_b.get();
            if (!fa || !fb)
                throw std::invalid_argument(
                    "strength: product mode needs factor sets (none embedded in the document)");
            const upb::OrthPattern ref = upb::product_reference_pattern(
                upb::zero_pattern(*fa, rc.tol_zero), upb::zero_pattern(*fb, rc.tol_zero));
            rep = upb::strength_generic(set, ref, rc.tol_zero);
        } else {
            throw std::invalid_argument("strength: unknown pattern mode '" + mode + "'");
        }

        if (!std::isnan(closed_value)) {
            const upb::ClosedVsGeneric cmp =
                upb::compare_closed_vs_generic(set, closed_value, rc.tol_zero);
            upb::ClosedFormCheck check;
            check.value = cmp.closed;
            check.abs_residual = cmp.abs_diff;
            check.rel_residual = cmp.rel_diff;
            check.ratio = cmp.ratio;
            rep.closed_form = check;
        }
        if (report_json) *report_json = dup_string(upb::strength_report_to_json(rep, set, rc));
    });
}

upb_status upb_closed_form_sixparam(double theta_a, double gamma_a, double phi_a, double theta_b,
                                    double gamma_b, double phi_b, double* out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("null output pointer");
        *out = upb::strength_sixparam_closed(
            {theta_a, gamma_a, phi_a, theta_b, gamma_b, phi_b});
    });
}

upb_status upb_closed_form_tri_f(double x, double y, double* out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("null output pointer");
        *out = upb::strength_tri_f(x, y);
    });
}

upb_status upb_closed_form_tri_strength(double x, double y, double* out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("null output pointer");
        *out = upb::strength_tri_closed(x, y);
    });
}

upb_status upb_state_report(const upb_basis* b, const upb_config* cfg, int include_pair_cuts,
                            int* ppt_out, char** report_json) {
    return guarded([&] {
        const upb::RunConfig rc = to_core(cfg);
        const upb::StateFacts facts =
            upb::complement_state_facts(deref(b), rc, include_pair_cuts != 0);
        if (ppt_out) *ppt_out = facts.ppt.ppt ? 1 : 0;
        if (report_json)
            *report_json = dup_string(upb::state_facts_to_json(facts, deref(b), rc));
    });
}

upb_status upb_state_selftest_bell(const upb_config* cfg, int* ppt_out, char** report_json) {
    return guarded([&] {
        const upb::RunConfig rc = to_core(cfg);
        upb::DensityMatrix bell;
        bell.dims = {2, 2};
        bell.rho = upb::CMat(4, 4);
        bell.rho(0, 0) = 0.5;
        bell.rho(0, 3) = 0.5;
        bell.rho(3, 0) = 0.5;
        bell.rho(3, 3) = 0.5;
        bell.trace = 1.0;
        const upb::PptReport rep = upb::ppt_check(bell, rc.tol_ppt);
        if (ppt_out) *ppt_out = rep.ppt ? 1 : 0;
        if (report_json) {
            nlohmann::json out = nlohmann::json::parse(upb::config_to_json(rc));
            nlohmann::json doc;
            doc["schema_version"] = 1;
            doc["config"] = std::move(out);
            doc["label"] = "BellProjector";
            doc["dims"] = bell.dims;
            doc["trace"] = bell.trace;
            nlohmann::json cuts = nlohmann::json::array();
            for (const upb::PptCut& c : rep.cuts)
                cuts.push_back({{"parties", c.parties}, {"min_eigenvalue", c.min_eigenvalue}});
            doc["ppt"] = {{"cuts", std::move(cuts)}, {"verdict", rep.ppt}, {"tol", rep.tol}};
            *report_json = dup_string(doc.dump(2));
        }
    });
}

upb_status upb_scan(const char* spec_json, const char* csv_path, const upb_config* cfg,
                    char** summary_json) {
    return guarded([&] {
        if (!spec_json || !csv_path) throw std::invalid_argument("null scan spec or path");
        const upb::RunConfig rc = to_core(cfg);
        const nlohmann::json spec = nlohmann::json::parse(spec_json);
        const upb::ScanGrid grid =
            upb::grid_scan(spec.at("objective").get<std::string>(),
                           param_map_from(spec.value("fixed", nlohmann::json{})),
                           axes_from(spec.at("axes")), rc);
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw io_error(std::string("cannot open '") + csv_path + "' for writing");
        out << upb::scan_to_csv(grid);
        out.flush();
        if (!out) throw io_error(std::string("write failure on '") + csv_path + "'");
        if (summary_json)
            *summary_json = dup_string(upb::scan_summary_to_json(grid, csv_path, rc));
    });
}

upb_status upb_optimize(const char* spec_json, const upb_config* cfg, char** result_json) {
    return guarded([&] {
        if (!spec_json) throw std::invalid_argument("null optimize spec");
        const upb::RunConfig rc = to_core(cfg);
        const nlohmann::json spec = nlohmann::json::parse(spec_json);
        const std::string objective = spec.at("objective").get<std::string>();
        if (!upb::objective_known(objective))
            throw std::invalid_argument("unknown objective '" + objective + "'");
        const upb::ParamMap fixed = param_map_from(spec.value("fixed", nlohmann::json{}));
        const double step0 = spec.value("step0", 0.05);
        const double tol = spec.value("tol", 1e-8);
        const int max_iter = spec.value("max_iter", 100000);

        upb::OptimizationResult res;
        if (spec.value("from_grid", false)) {
            const upb::ScanGrid grid =
                upb::grid_scan(objective, fixed, axes_from(spec.at("axes")), rc);
            res = upb::refine_from_grid(grid, step0, tol, max_iter, rc);
        } else {
            std::vector<upb::BoxSpec> box;
            for (const auto& b : spec.at("box"))
                box.push_back({b.at("name").get<std::string>(), b.at("lo").get<double>(),
                               b.at("hi").get<double>()});
            res = upb::refine_max(objective, fixed, box,
                                  param_map_from(spec.value("start", nlohmann::json{})), step0,
                                  tol, max_iter, rc);
        }
        if (result_json)
            *result_json = dup_string(upb::optimization_result_to_json(res, objective, rc));
    });
}

upb_status upb_family_catalog(char** out_json) {
    return guarded([&] {
        if (!out_json) throw std::invalid_argument("null output pointer");
        *out_json = dup_string(upb::catalog_to_json());
    });
}

}  // extern "C"
