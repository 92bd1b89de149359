#include "core/json_io.hpp"

#include <json.hpp>

namespace upb {

using nlohmann::json;

namespace {

json vec_to_json(const CVec& v) {
    json out = json::array();
    for (const cxd& x : v) out.push_back(json::array({x.real(), x.imag()}));
    return out;
}

CVec vec_from_json(const json& j) {
    CVec v;
    for (const json& pair : j) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("document: amplitude is not a [re, im] pair");
        v.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return v;
}

json basis_to_json_obj(const ProductBasisSet& set) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["label"] = set.label;
    doc["dims"] = set.dims;
    json members = json::array();
    for (const auto& member : set.members) {
        json m = json::array();
        for (const CVec& v : member) m.push_back(vec_to_json(v));
        members.push_back(std::move(m));
    }
    doc["members"] = std::move(members);
    if (set.factor_a && set.factor_b) {
        doc["tensor_factors"] = {{"a", basis_to_json_obj(*set.factor_a)},
                                 {"b", basis_to_json_obj(*set.factor_b)}};
    }
    return doc;
}

ProductBasisSet basis_from_json_obj(const json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("document: not a JSON object");
    if (!doc.contains("dims") || !doc.contains("members"))
        throw std::invalid_argument("document: missing dims or members");
    ProductBasisSet set;
    set.label = doc.value("label", std::string{});
    set.dims = doc.at("dims").get<std::vector<int>>();
    for (const json& member : doc.at("members")) {
        std::vector<CVec> vecs;
        for (const json& v : member) vecs.push_back(vec_from_json(v));
        set.members.push_back(std::move(vecs));
    }
    if (doc.contains("tensor_factors")) {
        const json& tf = doc.at("tensor_factors");
        set.factor_a = std::make_shared<ProductBasisSet>(basis_from_json_obj(tf.at("a")));
        set.factor_b = std::make_shared<ProductBasisSet>(basis_from_json_obj(tf.at("b")));
    }
    set.validate();
    return set;
}

json config_to_json_obj(const RunConfig& cfg) {
    return json{{"tol_zero", cfg.tol_zero}, {"tol_rank", cfg.tol_rank},
                {"tol_ppt", cfg.tol_ppt},   {"max_members", cfg.max_members},
                {"threads", cfg.threads},   {"seed", cfg.seed}};
}

json header(const RunConfig& cfg) {
    return json{{"schema_version", kSchemaVersion}, {"config", config_to_json_obj(cfg)}};
}

json pairs_to_json(const std::vector<std::pair<int, int>>& pairs) {
    json out = json::array();
    for (const auto& [i, j] : pairs) out.push_back(json::array({i, j}));
    return out;
}

json pattern_to_json(const OrthPattern& pat) {
    json zeros = json::array();
    for (int p = 0; p < pat.parties(); ++p) {
        json party = json::array();
        for (int i = 0; i < pat.n; ++i)
            for (int j = i + 1; j < pat.n; ++j)
                if (pat.is_zero(p, i, j)) party.push_back(json::array({i, j}));
        zeros.push_back(std::move(party));
    }
    return json{{"tol", pat.tol}, {"zero_pairs", std::move(zeros)}};
}

}  // namespace

std::string basis_to_json(const ProductBasisSet& set, bool pretty) {
    const json doc = basis_to_json_obj(set);
    return pretty ? doc.dump(2) : doc.dump();
}

ProductBasisSet basis_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("document: JSON parse failure: ") + e.what());
    }
    try {
        return basis_from_json_obj(doc);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("document: malformed content: ") + e.what());
    }
}

std::string config_to_json(const RunConfig& cfg) { return config_to_json_obj(cfg).dump(2); }

std::string upb_report_to_json(const UpbReport& rep, const ProductBasisSet& set,
                               const RunConfig& cfg) {
    json out = header(cfg);
    out["label"] = set.label;
    out["dims"] = set.dims;
    out["members"] = set.size();
    out["orthogonal"] = rep.orthogonal;
    out["unextendible"] = rep.unextendible;
    out["is_upb"] = rep.is_upb();
    out["method"] = rep.method;
    out["violating_pairs"] = pairs_to_json(rep.violating_pairs);
    if (rep.pattern.n > 0) out["pattern"] = pattern_to_json(rep.pattern);
    if (rep.witness) {
        json w;
        w["assignment"] = rep.witness->assignment;
        json vecs = json::array();
        for (const CVec& v : rep.witness->party_vectors) vecs.push_back(vec_to_json(v));
        w["party_vectors"] = std::move(vecs);
        w["max_overlap"] = rep.witness->max_overlap;
        out["witness"] = std::move(w);
    }
    return out.dump(2);
}

std::string strength_report_to_json(const StrengthReport& rep, const ProductBasisSet& set,
                                    const RunConfig& cfg) {
    json out = header(cfg);
    out["label"] = set.label;
    out["value"] = rep.value;
    out["per_party_factors"] = rep.per_party_factors;
    out["pattern_source"] = rep.pattern_source;
    json parties = json::array();
    for (const auto& plist : rep.contributing_pairs) {
        json pj = json::array();
        for (const ContributingPair& cp : plist)
            pj.push_back(json{{"i", cp.i}, {"j", cp.j}, {"magnitude", cp.magnitude}});
        parties.push_back(std::move(pj));
    }
    out["contributing_pairs"] = std::move(parties);
    if (rep.closed_form) {
        out["closed_form"] = json{{"value", rep.closed_form->value},
                                  {"abs_residual", rep.closed_form->abs_residual},
                                  {"rel_residual", rep.closed_form->rel_residual},
                                  {"ratio", rep.closed_form->ratio}};
    }
    return out.dump(2);
}

std::string state_facts_to_json(const StateFacts& facts, const ProductBasisSet& set,
                                const RunConfig& cfg) {
    json out = header(cfg);
    out["label"] = set.label;
    out["dims"] = facts.dims;
    out["total_dim"] = facts.total_dim;
    out["members"] = facts.n_members;
    out["trace"] = facts.trace;
    out["rank"] = facts.rank;
    out["eig_min"] = facts.eig_min;
    out["eig_max"] = facts.eig_max;
    out["max_member_overlap"] = facts.max_member_overlap;
    json cuts = json::array();
    for (const PptCut& c : facts.ppt.cuts)
        cuts.push_back(json{{"parties", c.parties}, {"min_eigenvalue", c.min_eigenvalue}});
    out["ppt"] = json{{"cuts", std::move(cuts)}, {"verdict", facts.ppt.ppt}, {"tol", facts.ppt.tol}};
    return out.dump(2);
}

std::string optimization_result_to_json(const OptimizationResult& res, const std::string& objective,
                                        const RunConfig& cfg) {
    json out = header(cfg);
    out["objective"] = objective;
    json maxima = json::array();
    for (const auto& m : res.maxima) {
        json point;
        for (const auto& [name, v] : m.point) point[name] = v;
        maxima.push_back(json{{"point", std::move(point)}, {"value", m.value}, {"kind", m.kind}});
    }
    out["maxima"] = std::move(maxima);
    out["evaluations"] = res.evaluations;
    out["converged"] = res.converged;
    out["step_final"] = res.step_final;
    return out.dump(2);
}

std::string scan_summary_to_json(const ScanGrid& grid, const std::string& csv_path,
                                 const RunConfig& cfg) {
    json out = header(cfg);
    out["objective"] = grid.objective_id;
    json axes = json::array();
    for (const AxisSpec& a : grid.axes)
        axes.push_back(json{{"name", a.name}, {"lo", a.lo}, {"hi", a.hi}, {"steps", a.steps}});
    out["axes"] = std::move(axes);
    json fixed;
    for (const auto& [name, v] : grid.fixed) fixed[name] = v;
    out["fixed"] = std::move(fixed);
    out["points"] = grid.point_count();
    out["failures"] = grid.failures;
    out["out"] = csv_path;
    return out.dump(2);
}

std::string catalog_to_json() {
    json entries = json::array();
    for (const FamilyInfo& f : family_catalog())
        entries.push_back(json{{"name", f.name},
                               {"space", f.space},
                               {"members", f.members},
                               {"constructor", f.constructor}});
    json out;
    out["schema_version"] = kSchemaVersion;
    out["families"] = std::move(entries);
    return out.dump(2);
}

}  // namespace upb
