// upb command-line tool. Links the C API only; JSON plumbing is local.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "upb/upb.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;  // well-formed negative finding
constexpr int kExitUsage = 2;     // usage or input error

struct BasisDeleter {
    void operator()(upb_basis* b) const { upb_basis_free(b); }
};
using BasisPtr = std::unique_ptr<upb_basis, BasisDeleter>;

struct StringDeleter {
    void operator()(char* s) const { upb_string_free(s); }
};
using CStr = std::unique_ptr<char, StringDeleter>;

int report_error(const std::string& context) {
    std::cerr << "error: " << context << ": " << upb_last_error() << "\n";
    return kExitUsage;
}

std::string slurp(const std::string& path) {
    if (path == "-" || path.empty()) {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Relative output paths resolve under $UPB_OUT_DIR when it is set.
std::string resolve_out_path(const std::string& path) {
    if (path.empty() || path == "-") return path;
    const char* base = std::getenv("UPB_OUT_DIR");
    std::filesystem::path p(path);
    if (base && *base && p.is_relative()) p = std::filesystem::path(base) / p;
    return p.string();
}

void emit(const std::string& out_path, const std::string& content) {
    const std::string resolved = resolve_out_path(out_path);
    if (resolved.empty() || resolved == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(resolved, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + resolved + "'");
    out << content;
}

BasisPtr load_basis(const std::string& in_path, int& exit_code) {
    exit_code = kExitOk;
    std::string text;
    try {
        text = slurp(in_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        exit_code = kExitUsage;
        return {};
    }
    upb_basis* raw = nullptr;
    if (upb_basis_from_json(text.c_str(), &raw) != UPB_OK) {
        exit_code = report_error("parsing document");
        return {};
    }
    return BasisPtr(raw);
}

// Named built-ins accepted where a document path is expected.
BasisPtr source_basis(const std::string& src, int& exit_code) {
    exit_code = kExitOk;
    upb_basis* raw = nullptr;
    if (src == "pyramid") {
        if (upb_construct_pyramid(&raw) != UPB_OK) {
            exit_code = report_error("constructing pyramid");
            return {};
        }
        return BasisPtr(raw);
    }
    if (src == "tiles") {
        if (upb_construct_tiles(&raw) != UPB_OK) {
            exit_code = report_error("constructing tiles");
            return {};
        }
        return BasisPtr(raw);
    }
    return load_basis(src, exit_code);
}

struct ConfigFlags {
    upb_config cfg{};
    void attach(CLI::App* app) {
        upb_config_init(&cfg);
        app->add_option("--tol-zero", cfg.tol_zero, "zero classification tolerance");
        app->add_option("--tol-rank", cfg.tol_rank, "relative rank tolerance");
        app->add_option("--tol-ppt", cfg.tol_ppt, "PPT eigenvalue tolerance");
        app->add_option("--max-members", cfg.max_members, "unextendibility enumeration cap");
        app->add_option("--threads", cfg.threads, "scan worker threads (1 = sequential)");
        app->add_option("--seed", cfg.seed, "seed for randomized helpers");
    }
};

json parse_axis_specs(const std::vector<std::string>& axis_args) {
    json axes = json::array();
    for (const std::string& spec : axis_args) {
        std::string name, lo, hi, steps;
        std::istringstream ss(spec);
        if (!std::getline(ss, name, ':') || !std::getline(ss, lo, ':') ||
            !std::getline(ss, hi, ':') || !std::getline(ss, steps))
            throw CLI::ValidationError("--axis expects name:lo:hi:steps, got '" + spec + "'");
        axes.push_back({{"name", name},
                        {"lo", std::stod(lo)},
                        {"hi", std::stod(hi)},
                        {"steps", std::stoi(steps)}});
    }
    return axes;
}

json parse_kv(const std::vector<std::string>& args, const char* flag) {
    json out = json::object();
    for (const std::string& kv : args) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError(std::string(flag) + " expects name=value, got '" + kv + "'");
        out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    return out;
}

int run_construct(const std::string& name, const json& args, const ConfigFlags&,
                  const std::string& out_path) {
    upb_basis* raw = nullptr;
    upb_status rc = UPB_ERR_INVALID_ARGUMENT;
    if (name == "pyramid") {
        rc = upb_construct_pyramid(&raw);
    } else if (name == "tiles") {
        rc = upb_construct_tiles(&raw);
    } else if (name == "sixparam") {
        rc = upb_construct_six_param(args.at("theta_a").get<double>(), args.at("gamma_a").get<double>(),
                                     args.at("phi_a").get<double>(), args.at("theta_b").get<double>(),
                                     args.at("gamma_b").get<double>(), args.at("phi_b").get<double>(),
                                     &raw);
    } else if (name == "genpyr7") {
        rc = upb_construct_gen_pyramid7(args.at("m").get<int>(), &raw);
    } else if (name == "tripartite") {
        double p[21];
        for (int i = 0; i < 21; ++i) p[i] = args.at("params")[static_cast<std::size_t>(i)].get<double>();
        double prenorms[3] = {0, 0, 0};
        rc = upb_construct_tripartite(p, prenorms, &raw);
        if (rc == UPB_OK)
            std::cerr << "index-1 recipe vector pre-normalization norms: " << prenorms[0] << ", "
                      << prenorms[1] << ", " << prenorms[2] << "\n";
    } else if (name == "subfamily") {
        rc = upb_construct_subfamily(args.at("theta").get<double>(), args.at("alpha").get<double>(), &raw);
    } else if (name == "tensor") {
        int ec = kExitOk;
        BasisPtr a = source_basis(args.at("a").get<std::string>(), ec);
        if (!a) return ec;
        BasisPtr b = source_basis(args.at("b").get<std::string>(), ec);
        if (!b) return ec;
        rc = upb_construct_tensor(a.get(), b.get(), &raw);
    } else {
        std::cerr << "error: unknown constructor '" << name << "'\n";
        return kExitUsage;
    }
    if (rc != UPB_OK) return report_error("construct " + name);
    BasisPtr basis(raw);

    CStr label;
    {
        char* s = nullptr;
        upb_basis_label(basis.get(), &s);
        label.reset(s);
    }
    char* doc = nullptr;
    if (upb_basis_to_json(basis.get(), &doc) != UPB_OK) return report_error("serializing document");
    CStr doc_owned(doc);
    try {
        emit(out_path, doc_owned.get());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    std::cerr << "constructed " << (label ? label.get() : name.c_str()) << ": "
              << upb_basis_members(basis.get()) << " members, " << upb_basis_parties(basis.get())
              << " parties\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"unextendible product bases: construct, verify, analyze"};
    app.require_subcommand(1);

    // ---- construct ----
    auto* c_construct = app.add_subcommand("construct", "build a product basis document");
    std::string cons_name;
    c_construct->add_option("name", cons_name, "pyramid|tiles|sixparam|genpyr7|tripartite|subfamily|tensor")
        ->required();
    ConfigFlags cons_cfg;
    cons_cfg.attach(c_construct);
    const double golden_angle = std::acos((std::sqrt(5.0) - 1.0) / 2.0);
    double theta_a = golden_angle, gamma_a = golden_angle, phi_a = 0.0;
    double theta_b = golden_angle, gamma_b = golden_angle, phi_b = 0.0;
    int genpyr_m = 2;
    std::vector<double> tri_v, tri_w, tri_u;
    double sub_theta = std::acos(0.5), sub_alpha = 0.0;
    std::string tensor_a = "pyramid", tensor_b = "tiles";
    std::string cons_out = "-";
    c_construct->add_option("--theta-a", theta_a, "sixparam: theta_A (radians)");
    c_construct->add_option("--gamma-a", gamma_a, "sixparam: gamma_A");
    c_construct->add_option("--phi-a", phi_a, "sixparam: phi_A");
    c_construct->add_option("--theta-b", theta_b, "sixparam: theta_B");
    c_construct->add_option("--gamma-b", gamma_b, "sixparam: gamma_B");
    c_construct->add_option("--phi-b", phi_b, "sixparam: phi_B");
    c_construct->add_option("--m", genpyr_m, "genpyr7: m in {2,3} (2 = Sept)");
    c_construct->add_option("--v", tri_v, "tripartite: theta1..theta4,lambda,mu,chi")->expected(7);
    c_construct->add_option("--w", tri_w, "tripartite: second block")->expected(7);
    c_construct->add_option("--u", tri_u, "tripartite: third block")->expected(7);
    c_construct->add_option("--theta", sub_theta, "subfamily: common angle");
    c_construct->add_option("--alpha", sub_alpha, "subfamily: common phase");
    c_construct->add_option("--a", tensor_a, "tensor: first factor (pyramid|tiles|path)");
    c_construct->add_option("--b", tensor_b, "tensor: second factor");
    c_construct->add_option("--out", cons_out, "output path ('-' = stdout)");

    // ---- verify ----
    auto* c_verify = app.add_subcommand("verify", "UPB verdict for a document");
    std::string verify_in = "-";
    ConfigFlags verify_cfg;
    verify_cfg.attach(c_verify);
    c_verify->add_option("--in", verify_in, "document path ('-' = stdin)");

    // ---- strength ----
    auto* c_strength = app.add_subcommand("strength", "strength report for a document");
    std::string strength_in = "-", pattern_mode = "measured", ref_path, ref_a_path, ref_b_path;
    std::string closed_form_id;
    double cf_theta_a = golden_angle, cf_gamma_a = golden_angle, cf_phi_a = 0.0;
    double cf_theta_b = golden_angle, cf_gamma_b = golden_angle, cf_phi_b = 0.0;
    double cf_x = 0.0, cf_y = 1.0;
    ConfigFlags strength_cfg;
    strength_cfg.attach(c_strength);
    c_strength->add_option("--in", strength_in, "document path ('-' = stdin)");
    c_strength->add_option("--pattern", pattern_mode, "measured|reference|product");
    c_strength->add_option("--ref", ref_path, "reference-pattern document (reference mode)");
    c_strength->add_option("--ref-a", ref_a_path, "first factor document (product mode)");
    c_strength->add_option("--ref-b", ref_b_path, "second factor document (product mode)");
    c_strength->add_option("--closed-form", closed_form_id, "sixparam|tri: compare against a closed form");
    c_strength->add_option("--cf-theta-a", cf_theta_a, "closed form sixparam: theta_A");
    c_strength->add_option("--cf-gamma-a", cf_gamma_a, "closed form sixparam: gamma_A");
    c_strength->add_option("--cf-phi-a", cf_phi_a, "closed form sixparam: phi_A (ignored by the form)");
    c_strength->add_option("--cf-theta-b", cf_theta_b, "closed form sixparam: theta_B");
    c_strength->add_option("--cf-gamma-b", cf_gamma_b, "closed form sixparam: gamma_B");
    c_strength->add_option("--cf-phi-b", cf_phi_b, "closed form sixparam: phi_B (ignored by the form)");
    c_strength->add_option("--cf-x", cf_x, "closed form tri: x = cos(theta)");
    c_strength->add_option("--cf-y", cf_y, "closed form tri: y = cos(alpha)");

    // ---- scan ----
    auto* c_scan = app.add_subcommand("scan", "dense grid scan of an objective to CSV");
    std::string scan_objective;
    std::vector<std::string> scan_axes, scan_fixed;
    std::string scan_out = "scan.csv";
    ConfigFlags scan_cfg;
    scan_cfg.attach(c_scan);
    c_scan->add_option("--objective", scan_objective,
                       "sixparam_closed|sixparam_generic|tri_f|tri_closed|subfamily_generic")
        ->required();
    c_scan->add_option("--axis", scan_axes, "axis as name:lo:hi:steps (repeatable)")->required();
    c_scan->add_option("--fix", scan_fixed, "fixed parameter name=value (repeatable)");
    c_scan->add_option("--out", scan_out, "CSV output path");

    // ---- optimize ----
    auto* c_opt = app.add_subcommand("optimize", "pattern-search maxima of an objective");
    std::string opt_objective;
    std::vector<std::string> opt_axes, opt_fixed, opt_box, opt_start;
    bool opt_from_grid = false;
    double opt_step0 = 0.05, opt_tol = 1e-8;
    int opt_max_iter = 100000;
    ConfigFlags opt_cfg;
    opt_cfg.attach(c_opt);
    c_opt->add_option("--objective", opt_objective, "objective id (see scan; plus quadratic_selftest)")
        ->required();
    c_opt->add_flag("--from-grid", opt_from_grid, "seed from every local maximum of a grid scan");
    c_opt->add_option("--axis", opt_axes, "grid axes for --from-grid, name:lo:hi:steps");
    c_opt->add_option("--box", opt_box, "search box name:lo:hi (repeatable)");
    c_opt->add_option("--start", opt_start, "start point name=value (repeatable)");
    c_opt->add_option("--fix", opt_fixed, "fixed parameter name=value (repeatable)");
    c_opt->add_option("--step0", opt_step0, "initial pattern-search step");
    c_opt->add_option("--tol", opt_tol, "terminal step size");
    c_opt->add_option("--max-iter", opt_max_iter, "iteration cap");

    // ---- state ----
    auto* c_state = app.add_subcommand("state", "complement-state spectrum and PPT report");
    std::string state_in = "-";
    bool pair_cuts = false;
    ConfigFlags state_cfg;
    state_cfg.attach(c_state);
    bool bell_selftest = false;
    c_state->add_option("--in", state_in, "document path ('-' = stdin)");
    c_state->add_flag("--pair-cuts", pair_cuts, "also transpose two-party groupings (k >= 3)");
    c_state->add_flag("--selftest-bell", bell_selftest,
                      "PPT-check the two-qubit Bell projector fixture instead of a document");

    // ---- catalog ----
    auto* c_catalog = app.add_subcommand("catalog", "named UPB families and dimensions");
    bool catalog_json = false;
    c_catalog->add_flag("--json", catalog_json, "emit JSON instead of a table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (c_construct->parsed()) {
            json args;
            args["theta_a"] = theta_a;
            args["gamma_a"] = gamma_a;
            args["phi_a"] = phi_a;
            args["theta_b"] = theta_b;
            args["gamma_b"] = gamma_b;
            args["phi_b"] = phi_b;
            args["m"] = genpyr_m;
            json tri = json::array();
            const std::vector<double> defaults(7, 0.0);
            auto block = [&](const std::vector<double>& v) {
                std::vector<double> b = v;
                if (b.empty()) b = {std::acos(0.5), std::acos(0.5), std::acos(0.5), std::acos(0.5), 0.0, 0.0, 0.0};
                return b;
            };
            for (double x : block(tri_v)) tri.push_back(x);
            for (double x : block(tri_w)) tri.push_back(x);
            for (double x : block(tri_u)) tri.push_back(x);
            args["params"] = std::move(tri);
            args["theta"] = sub_theta;
            args["alpha"] = sub_alpha;
            args["a"] = tensor_a;
            args["b"] = tensor_b;
            return run_construct(cons_name, args, cons_cfg, cons_out);
        }

        if (c_verify->parsed()) {
            int ec = kExitOk;
            BasisPtr basis = load_basis(verify_in, ec);
            if (!basis) return ec;
            int verdict = 0;
            char* rep = nullptr;
            if (upb_verify(basis.get(), &verify_cfg.cfg, &verdict, &rep) != UPB_OK)
                return report_error("verify");
            CStr rep_owned(rep);
            std::cout << rep << "\n";
            std::cerr << (verdict ? "UPB: yes\n" : "UPB: no\n");
            return verdict ? kExitOk : kExitNegative;
        }

        if (c_strength->parsed()) {
            int ec = kExitOk;
            BasisPtr basis = load_basis(strength_in, ec);
            if (!basis) return ec;
            BasisPtr ref, ref_b;
            const upb_basis* ref_a_raw = nullptr;
            const upb_basis* ref_b_raw = nullptr;
            if (pattern_mode == "reference") {
                if (ref_path.empty()) {
                    std::cerr << "error: --pattern reference needs --ref\n";
                    return kExitUsage;
                }
                ref = load_basis(ref_path, ec);
                if (!ref) return ec;
                ref_a_raw = ref.get();
            } else if (pattern_mode == "product") {
                if (!ref_a_path.empty()) {
                    ref = source_basis(ref_a_path, ec);
                    if (!ref) return ec;
                    ref_a_raw = ref.get();
                }
                if (!ref_b_path.empty()) {
                    ref_b = source_basis(ref_b_path, ec);
                    if (!ref_b) return ec;
                    ref_b_raw = ref_b.get();
                }
            }

            double closed = std::nan("");
            if (closed_form_id == "sixparam") {
                if (upb_closed_form_sixparam(cf_theta_a, cf_gamma_a, cf_phi_a, cf_theta_b, cf_gamma_b,
                                             cf_phi_b, &closed) != UPB_OK)
                    return report_error("closed form");
            } else if (closed_form_id == "tri") {
                if (upb_closed_form_tri_strength(cf_x, cf_y, &closed) != UPB_OK)
                    return report_error("closed form");
            } else if (!closed_form_id.empty()) {
                std::cerr << "error: unknown closed form '" << closed_form_id << "'\n";
                return kExitUsage;
            }

            char* rep = nullptr;
            if (upb_strength(basis.get(), pattern_mode.c_str(), ref_a_raw, ref_b_raw, closed,
                             &strength_cfg.cfg, &rep) != UPB_OK)
                return report_error("strength");
            CStr rep_owned(rep);
            std::cout << rep << "\n";
            const json parsed = json::parse(rep);
            std::cerr << "strength = " << parsed.at("value").get<double>() << " (pattern "
                      << pattern_mode << ")\n";
            return kExitOk;
        }

        if (c_scan->parsed()) {
            json spec;
            spec["objective"] = scan_objective;
            spec["axes"] = parse_axis_specs(scan_axes);
            spec["fixed"] = parse_kv(scan_fixed, "--fix");
            const std::string resolved = resolve_out_path(scan_out);
            char* summary = nullptr;
            if (upb_scan(spec.dump().c_str(), resolved.c_str(), &scan_cfg.cfg, &summary) != UPB_OK)
                return report_error("scan");
            CStr owned(summary);
            std::cout << summary << "\n";
            std::cerr << "scan written to " << resolved << "\n";
            return kExitOk;
        }

        if (c_opt->parsed()) {
            json spec;
            spec["objective"] = opt_objective;
            spec["fixed"] = parse_kv(opt_fixed, "--fix");
            spec["step0"] = opt_step0;
            spec["tol"] = opt_tol;
            spec["max_iter"] = opt_max_iter;
            if (opt_from_grid) {
                spec["from_grid"] = true;
                spec["axes"] = parse_axis_specs(opt_axes);
            } else {
                if (opt_box.empty()) {
                    std::cerr << "error: optimize needs --box (or --from-grid with --axis)\n";
                    return kExitUsage;
                }
                json box = json::array();
                for (const std::string& b : opt_box) {
                    std::string name, lo, hi;
                    std::istringstream ss(b);
                    if (!std::getline(ss, name, ':') || !std::getline(ss, lo, ':') ||
                        !std::getline(ss, hi))
                        throw CLI::ValidationError("--box expects name:lo:hi, got '" + b + "'");
                    box.push_back({{"name", name}, {"lo", std::stod(lo)}, {"hi", std::stod(hi)}});
                }
                spec["box"] = std::move(box);
                spec["start"] = parse_kv(opt_start, "--start");
            }
            char* result = nullptr;
            if (upb_optimize(spec.dump().c_str(), &opt_cfg.cfg, &result) != UPB_OK)
                return report_error("optimize");
            CStr owned(result);
            std::cout << result << "\n";
            return kExitOk;
        }

        if (c_state->parsed()) {
            if (bell_selftest) {
                int ppt = 0;
                char* rep = nullptr;
                if (upb_state_selftest_bell(&state_cfg.cfg, &ppt, &rep) != UPB_OK)
                    return report_error("state selftest");
                CStr rep_owned(rep);
                std::cout << rep << "\n";
                std::cerr << (ppt ? "PPT: yes\n" : "PPT: no\n");
                return kExitOk;
            }
            int ec = kExitOk;
            BasisPtr basis = load_basis(state_in, ec);
            if (!basis) return ec;
            int ppt = 0;
            char* rep = nullptr;
            const upb_status rc =
                upb_state_report(basis.get(), &state_cfg.cfg, pair_cuts ? 1 : 0, &ppt, &rep);
            if (rc == UPB_ERR_PRECONDITION) {
                // Parsed fine but the set admits no complement state: a
                // negative finding, not a usage error.
                std::cerr << "not applicable: " << upb_last_error() << "\n";
                return kExitNegative;
            }
            if (rc != UPB_OK) return report_error("state");
            CStr rep_owned(rep);
            std::cout << rep << "\n";
            std::cerr << (ppt ? "PPT: yes\n" : "PPT: no\n");
            return kExitOk;
        }

        if (c_catalog->parsed()) {
            char* cat = nullptr;
            if (upb_family_catalog(&cat) != UPB_OK) return report_error("catalog");
            CStr owned(cat);
            if (catalog_json) {
                std::cout << cat << "\n";
            } else {
                const json parsed = json::parse(cat);
                std::printf("%-22s %-36s %-24s %s\n", "family", "space", "members", "constructor");
                for (const auto& f : parsed.at("families"))
                    std::printf("%-22s %-36s %-24s %s\n", f.at("name").get<std::string>().c_str(),
                                f.at("space").get<std::string>().c_str(),
                                f.at("members").get<std::string>().c_str(),
                                f.at("constructor").get<std::string>().empty()
                                    ? "(metadata only)"
                                    : f.at("constructor").get<std::string>().c_str());
            }
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
