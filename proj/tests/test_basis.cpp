#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/basis.hpp"
#include "core/verify.hpp"

using namespace upb;

TEST_CASE("pyramid: geometry of the five vectors") {
    const ProductBasisSet pyr = make_pyramid();
    CHECK(pyr.dims == std::vector<int>{3, 3});
    CHECK(pyr.size() == 5);
    CHECK(pyr.label == "Pyramid");

    const double h = std::sqrt(-std::cos(4.0 * std::numbers::pi / 5.0));
    const double n = 1.0 / std::sqrt(1.0 + std::abs(std::cos(4.0 * std::numbers::pi / 5.0)));
    CHECK(std::abs(h - 0.899454) < 1e-6);
    CHECK(std::abs(n - 1.0 / std::sqrt(1.809017)) < 1e-6);
    for (int i = 0; i < 5; ++i) {
        const cxd third = pyr.members[static_cast<std::size_t>(i)][0][2];
        CHECK(std::abs(third - cxd{n * h, 0.0}) < 1e-12);
    }

    // w_i = v_{2i mod 5}: member 3 party 2 is v_1
    const CVec& w3 = pyr.members[3][1];
    const CVec& v1 = pyr.members[1][0];
    for (int c = 0; c < 3; ++c) CHECK(std::abs(w3[static_cast<std::size_t>(c)] - v1[static_cast<std::size_t>(c)]) < 1e-15);
}

TEST_CASE("tiles: printed kets") {
    const ProductBasisSet tiles = make_tiles();
    CHECK(tiles.size() == 5);
    CHECK(std::abs(tiles.members[0][0][0] - cxd{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(tiles.members[0][0][1]) == 0.0);
    CHECK(std::abs(inner(tiles.members[1][0], tiles.members[2][0])) < 1e-15);
}

TEST_CASE("six-param family: structure and degeneracies") {
    const ProductBasisSet set = make_six_param(pyramid_point());
    CHECK(set.dims == std::vector<int>{3, 3});
    CHECK(set.size() == 5);
    for (const auto& member : set.members)
        for (const CVec& v : member) CHECK(std::abs(norm(v) - 1.0) < 1e-12);

    // theta = gamma = pi/2 kills both terms of the normalizer
    const double t = std::numbers::pi / 2.0;
    CHECK_THROWS_AS(make_six_param({t, t, 0.0, 0.3, 0.4, 0.0}), std::domain_error);
    CHECK_THROWS_WITH_AS(make_six_param({0.3, 0.4, 0.0, t, t, 0.0}),
                         doctest::Contains("party B"), std::domain_error);
}

TEST_CASE("six-param family: pyramid point reproduces the pyramid pattern") {
    const ProductBasisSet pyr = make_pyramid();
    const ProductBasisSet six = make_six_param(pyramid_point());
    const OrthPattern pa = zero_pattern(pyr, 1e-9);
    const OrthPattern pb = zero_pattern(six, 1e-9);
    // same zero/nonzero pattern up to the party-respecting member relabeling:
    // both are two disjoint 5-cycles; compare as sets of per-party zero counts
    // plus the exact pair sets.
    REQUIRE(pa.parties() == pb.parties());
    for (int p = 0; p < pa.parties(); ++p) {
        int ca = 0, cb = 0;
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) {
                ca += pa.is_zero(p, i, j);
                cb += pb.is_zero(p, i, j);
            }
        CHECK(ca == 5);
        CHECK(cb == 5);
    }
    // pair sets coincide exactly for this family labeling
    for (int p = 0; p < 2; ++p)
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) CHECK(pa.is_zero(p, i, j) == pb.is_zero(p, i, j));
}

TEST_CASE("gen pyramid 7: heights, labels, validation") {
    const ProductBasisSet sept = make_gen_pyramid7(2);
    CHECK(sept.label == "Sept");
    CHECK(sept.dims == std::vector<int>{3, 3, 3});
    CHECK(sept.size() == 7);

    const double h7sq = -std::cos(4.0 * std::numbers::pi / 7.0);
    CHECK(std::abs(h7sq - 0.222521) < 1e-6);
    const double n7 = 1.0 / std::sqrt(1.0 + h7sq);
    CHECK(std::abs(sept.members[0][0][2] - cxd{n7 * std::sqrt(h7sq), 0.0}) < 1e-12);

    CHECK(make_gen_pyramid7(3).label == "GenPyramid7(m=3)");
    CHECK_THROWS_WITH_AS(make_gen_pyramid7(1), doctest::Contains("imaginary"),
                         std::invalid_argument);
    CHECK_THROWS_AS(make_gen_pyramid7(0), std::invalid_argument);
}

TEST_CASE("tripartite: index maps and prenorm bookkeeping") {
    TriBlock b;
    b.theta1 = b.theta2 = b.theta3 = b.theta4 = std::numbers::pi / 3.0;
    std::vector<double> prenorms;
    const ProductBasisSet set = make_tripartite({b, b, b}, &prenorms);
    CHECK(set.dims == std::vector<int>{3, 3, 3});
    CHECK(set.size() == 7);
    REQUIRE(prenorms.size() == 3);
    for (double p : prenorms) CHECK(p > 0.1);

    // member 1, party 2 uses recipe index 2*1 mod 7 = 2, i.e. the ket |1>
    const CVec& w1 = set.members[1][1];
    CHECK(std::abs(w1[1] - cxd{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(w1[0]) < 1e-15);
    CHECK(std::abs(w1[2]) < 1e-15);

    // theta1 = theta2 = 0, theta3 = theta4 = pi/2 cancels every component of
    // the index-1 recipe vector; the error must name the member and party
    TriBlock bad = b;
    bad.theta1 = 0.0;
    bad.theta2 = 0.0;
    bad.theta3 = std::numbers::pi / 2.0;
    bad.theta4 = std::numbers::pi / 2.0;
    CHECK_THROWS_WITH_AS(make_tripartite({bad, b, b}), doctest::Contains("party 0"),
                         std::domain_error);
}

TEST_CASE("subfamily: gauge chi = 0, lambda = mu = alpha") {
    const ProductBasisSet a = make_subfamily(std::numbers::pi / 3.0, 0.7);
    TriBlock b;
    b.theta1 = b.theta2 = b.theta3 = b.theta4 = std::numbers::pi / 3.0;
    b.lambda = b.mu = 0.7;
    b.chi = 0.0;
    const ProductBasisSet c = make_tripartite({b, b, b});
    REQUIRE(a.size() == c.size());
    for (int j = 0; j < a.size(); ++j)
        for (int p = 0; p < 3; ++p)
            for (int t = 0; t < 3; ++t)
                CHECK(std::abs(a.members[static_cast<std::size_t>(j)][static_cast<std::size_t>(p)][static_cast<std::size_t>(t)] -
                               c.members[static_cast<std::size_t>(j)][static_cast<std::size_t>(p)][static_cast<std::size_t>(t)]) == 0.0);
}

TEST_CASE("tensor product: shape, norms, factors") {
    const ProductBasisSet prod = tensor_product_upb(make_pyramid(), make_tiles());
    CHECK(prod.dims == std::vector<int>{9, 9});
    CHECK(prod.size() == 25);
    CHECK(prod.label == "Tensor(Pyramid,Tiles)");
    REQUIRE(prod.factor_a);
    REQUIRE(prod.factor_b);
    for (const auto& member : prod.members)
        for (const CVec& v : member) CHECK(std::abs(norm(v) - 1.0) < 1e-12);

    ProductBasisSet tri = make_gen_pyramid7(2);
    CHECK_THROWS_AS(tensor_product_upb(make_pyramid(), tri), std::invalid_argument);
}

TEST_CASE("family catalog lists the named constructions") {
    const auto table = family_catalog();
    CHECK(table.size() >= 10);
    bool has_gen_shifts = false, has_quad_res = false;
    for (const FamilyInfo& f : table) {
        if (f.name == "Gen Shifts") has_gen_shifts = f.constructor.empty();
        if (f.name == "Quad Res") has_quad_res = f.constructor.empty();
    }
    CHECK(has_gen_shifts);
    CHECK(has_quad_res);
}
