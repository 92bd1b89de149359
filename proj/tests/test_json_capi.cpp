#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include <json.hpp>

#include "core/basis.hpp"
#include "core/json_io.hpp"
#include "support/random_support.hpp"
#include "upb/upb.h"

using namespace upb;
using namespace upb::testsupport;

TEST_CASE("document round-trip reproduces every amplitude exactly") {
    std::mt19937 rng(321);
    for (int trial = 0; trial < 5; ++trial) {
        const ProductBasisSet original = make_six_param(random_valid_six_param(rng));
        const ProductBasisSet back = basis_from_json(basis_to_json(original));
        REQUIRE(back.size() == original.size());
        CHECK(back.label == original.label);
        CHECK(back.dims == original.dims);
        for (int j = 0; j < original.size(); ++j)
            for (int p = 0; p < original.parties(); ++p)
                for (int t = 0; t < 3; ++t) {
                    const cxd a = original.members[static_cast<std::size_t>(j)][static_cast<std::size_t>(p)][static_cast<std::size_t>(t)];
                    const cxd b = back.members[static_cast<std::size_t>(j)][static_cast<std::size_t>(p)][static_cast<std::size_t>(t)];
                    CHECK(a.real() == b.real());
                    CHECK(a.imag() == b.imag());
                }
    }
}

TEST_CASE("document: tensor factors are embedded and recovered") {
    const ProductBasisSet prod = tensor_product_upb(make_pyramid(), make_tiles());
    const std::string text = basis_to_json(prod);
    const nlohmann::json doc = nlohmann::json::parse(text);
    CHECK(doc.at("schema_version").get<int>() == kSchemaVersion);
    REQUIRE(doc.contains("tensor_factors"));
    const ProductBasisSet back = basis_from_json(text);
    REQUIRE(back.factor_a);
    REQUIRE(back.factor_b);
    CHECK(back.factor_a->label == "Pyramid");
    CHECK(back.factor_b->size() == 5);
}

TEST_CASE("document: malformed input is rejected") {
    CHECK_THROWS_AS(basis_from_json("{ not json"), std::invalid_argument);
    CHECK_THROWS_AS(basis_from_json("{\"schema_version\":1}"), std::invalid_argument);
    // non-unit amplitudes violate the member invariants
    CHECK_THROWS_AS(
        basis_from_json(R"({"dims":[2,2],"members":[[[[2,0],[0,0]],[[1,0],[0,0]]]],"label":"x"})"),
        std::invalid_argument);
}

TEST_CASE("C API: construct, verify, strength, state round trip") {
    upb_config cfg;
    upb_config_init(&cfg);
    CHECK(cfg.tol_zero == 1e-9);
    CHECK(cfg.max_members == 20);

    upb_basis* pyr = nullptr;
    REQUIRE(upb_construct_pyramid(&pyr) == UPB_OK);
    CHECK(upb_basis_parties(pyr) == 2);
    CHECK(upb_basis_members(pyr) == 5);
    CHECK(upb_basis_dim(pyr, 0) == 3);
    CHECK(upb_basis_dim(pyr, 7) == -1);

    char* label = nullptr;
    REQUIRE(upb_basis_label(pyr, &label) == UPB_OK);
    CHECK(std::strcmp(label, "Pyramid") == 0);
    upb_string_free(label);

    int verdict = 0;
    char* report = nullptr;
    REQUIRE(upb_verify(pyr, &cfg, &verdict, &report) == UPB_OK);
    CHECK(verdict == 1);
    const nlohmann::json vr = nlohmann::json::parse(report);
    CHECK(vr.at("is_upb").get<bool>());
    CHECK(vr.at("schema_version").get<int>() == 1);
    CHECK(vr.at("config").at("tol_rank").get<double>() == 1e-8);
    upb_string_free(report);

    char* strength = nullptr;
    REQUIRE(upb_strength(pyr, "measured", nullptr, nullptr, std::nan(""), &cfg, &strength) == UPB_OK);
    const nlohmann::json sr = nlohmann::json::parse(strength);
    CHECK(std::abs(sr.at("value").get<double>() - 0.008130618755782) < 1e-8);
    CHECK_FALSE(sr.contains("closed_form"));
    upb_string_free(strength);

    double closed = 0.0;
    const double golden_angle = std::acos((std::sqrt(5.0) - 1.0) / 2.0);
    REQUIRE(upb_closed_form_sixparam(golden_angle, golden_angle, 0.0, golden_angle, golden_angle,
                                     0.0, &closed) == UPB_OK);
    char* with_cf = nullptr;
    REQUIRE(upb_strength(pyr, "measured", nullptr, nullptr, closed, &cfg, &with_cf) == UPB_OK);
    const nlohmann::json cf = nlohmann::json::parse(with_cf);
    REQUIRE(cf.contains("closed_form"));
    CHECK(cf.at("closed_form").at("rel_residual").get<double>() < 1e-9);
    upb_string_free(with_cf);

    int ppt = 0;
    char* state = nullptr;
    REQUIRE(upb_state_report(pyr, &cfg, 0, &ppt, &state) == UPB_OK);
    CHECK(ppt == 1);
    const nlohmann::json st = nlohmann::json::parse(state);
    CHECK(st.at("rank").get<int>() == 4);
    upb_string_free(state);

    upb_basis_free(pyr);
}

TEST_CASE("C API: error paths set status and message") {
    upb_basis* out = nullptr;
    CHECK(upb_construct_gen_pyramid7(1, &out) == UPB_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(upb_last_error()) > 0);

    CHECK(upb_basis_from_json("not json at all", &out) == UPB_ERR_INVALID_ARGUMENT);

    upb_config cfg;
    upb_config_init(&cfg);
    cfg.tol_zero = -1.0;
    upb_basis* pyr = nullptr;
    REQUIRE(upb_construct_pyramid(&pyr) == UPB_OK);
    int verdict = 0;
    CHECK(upb_verify(pyr, &cfg, &verdict, nullptr) == UPB_ERR_INVALID_ARGUMENT);

    // degenerate six-param normalizer maps to a precondition failure
    const double half_pi = std::acos(0.0);
    CHECK(upb_construct_six_param(half_pi, half_pi, 0.0, 0.3, 0.4, 0.0, &out) ==
          UPB_ERR_PRECONDITION);

    upb_basis_free(pyr);
}

TEST_CASE("C API: strength product mode uses embedded factors") {
    upb_basis* pyr = nullptr;
    upb_basis* tiles = nullptr;
    upb_basis* prod = nullptr;
    REQUIRE(upb_construct_pyramid(&pyr) == UPB_OK);
    REQUIRE(upb_construct_tiles(&tiles) == UPB_OK);
    REQUIRE(upb_construct_tensor(pyr, tiles, &prod) == UPB_OK);

    upb_config cfg;
    upb_config_init(&cfg);
    char* report = nullptr;
    REQUIRE(upb_strength(prod, "product", nullptr, nullptr, std::nan(""), &cfg, &report) == UPB_OK);
    const nlohmann::json sr = nlohmann::json::parse(report);
    const double expected = 0.008130618755782 * (1.0 / 144.0);
    CHECK(std::abs(sr.at("value").get<double>() - expected) <= 1e-9 * expected);
    upb_string_free(report);

    // verify routes through the factor theorem
    int verdict = 0;
    char* vrep = nullptr;
    REQUIRE(upb_verify(prod, &cfg, &verdict, &vrep) == UPB_OK);
    CHECK(verdict == 1);
    CHECK(std::string(vrep).find("tensor-factor-theorem") != std::string::npos);
    upb_string_free(vrep);

    upb_basis_free(prod);
    upb_basis_free(tiles);
    upb_basis_free(pyr);
}

TEST_CASE("C API: scan and optimize specs") {
    upb_config cfg;
    upb_config_init(&cfg);
    const char* spec =
        R"({"objective":"tri_f","fixed":{"y":1.0},"axes":[{"name":"x","lo":-1,"hi":1,"steps":21}]})";
    char* summary = nullptr;
    const std::string path = std::string("capi_scan_test.csv");
    REQUIRE(upb_scan(spec, path.c_str(), &cfg, &summary) == UPB_OK);
    const nlohmann::json sj = nlohmann::json::parse(summary);
    CHECK(sj.at("points").get<int>() == 21);
    upb_string_free(summary);
    std::remove(path.c_str());

    CHECK(upb_scan(spec, "/nonexistent-dir/x.csv", &cfg, nullptr) == UPB_ERR_IO);

    const char* opt =
        R"({"objective":"quadratic_selftest","box":[{"name":"x","lo":-1,"hi":1}],"start":{"x":0.9},"step0":0.1,"tol":1e-9})";
    char* result = nullptr;
    REQUIRE(upb_optimize(opt, &cfg, &result) == UPB_OK);
    const nlohmann::json oj = nlohmann::json::parse(result);
    CHECK(std::abs(oj.at("maxima")[0].at("point").at("x").get<double>() - 0.3) < 1e-7);
    upb_string_free(result);

    CHECK(upb_optimize(R"({"objective":"nope","box":[]})", &cfg, nullptr) ==
          UPB_ERR_INVALID_ARGUMENT);
}
