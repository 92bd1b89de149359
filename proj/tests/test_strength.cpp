#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "core/basis.hpp"
#include "core/strength.hpp"
#include "core/verify.hpp"
#include "support/random_support.hpp"

using namespace upb;
using namespace upb::testsupport;

namespace {
// expected strengths evaluated here from their closed forms
double pyramid_strength_expected() {
    const double b5 = (30.0 * std::sqrt(5.0) - 66.0) / 12.0;
    return b5 * b5;
}
double tiles_strength_expected() { return (1.0 / 12.0) * (1.0 / 12.0); }
}  // namespace

TEST_CASE("bargmann: cycles and invariances") {
    const std::vector<CVec> one{CVec{1.0, 0.0}};
    const std::array<int, 2> trivial{0, 0};
    CHECK(std::abs(bargmann(one, trivial).value - cxd{1.0, 0.0}) < 1e-15);

    const ProductBasisSet pyr = make_pyramid();
    std::vector<CVec> vs;
    for (int i = 0; i < 5; ++i) vs.push_back(pyr.members[static_cast<std::size_t>(i)][0]);
    const std::array<int, 5> cyc{0, 1, 2, 3, 4};
    const BargmannValue b = bargmann(vs, cyc);
    CHECK(std::abs(std::abs(b.value) - 0.090170) < 1e-6);
    CHECK(std::abs(b.value) <= 1.0);

    const std::array<int, 5> rotated{1, 2, 3, 4, 0};
    CHECK(std::abs(bargmann(vs, rotated).value - b.value) < 1e-15);

    const std::array<int, 3> bad{0, 9, 1};
    CHECK_THROWS_AS(bargmann(vs, bad), std::invalid_argument);
    const std::array<int, 1> tooshort{0};
    CHECK_THROWS_AS(bargmann(vs, tooshort), std::invalid_argument);
}

TEST_CASE("strength: pyramid and tiles closed-form values") {
    const StrengthReport pyr = strength_generic(make_pyramid(), 1e-9);
    CHECK(std::abs(pyr.value - pyramid_strength_expected()) < 1e-8);
    CHECK(pyr.pattern_source == "measured");
    REQUIRE(pyr.per_party_factors.size() == 2);
    double prod = 1.0;
    for (double f : pyr.per_party_factors) prod *= f;
    CHECK(std::abs(prod - pyr.value) <= 1e-12 * std::abs(pyr.value));
    for (const auto& plist : pyr.contributing_pairs) {
        CHECK(plist.size() == 5);
        for (const ContributingPair& cp : plist) CHECK(cp.magnitude > 0.0);
    }

    const StrengthReport tiles = strength_generic(make_tiles(), 1e-9);
    CHECK(std::abs(tiles.value - tiles_strength_expected()) < 1e-10);
    CHECK(tiles.value < pyr.value);
}

TEST_CASE("strength: |B5| equals the pyramid party factor") {
    const ProductBasisSet pyr = make_pyramid();
    std::vector<CVec> vs;
    for (int i = 0; i < 5; ++i) vs.push_back(pyr.members[static_cast<std::size_t>(i)][0]);
    const std::array<int, 5> cyc{0, 1, 2, 3, 4};
    const double b5 = std::abs(bargmann(vs, cyc).value);
    const StrengthReport rep = strength_generic(pyr, 1e-9);
    CHECK(std::abs(b5 - rep.per_party_factors[0]) < 1e-10);
}

TEST_CASE("strength: invariant under single-vector phases and one-party rotations") {
    std::mt19937 rng(2024);
    const ProductBasisSet base = make_six_param(random_valid_six_param(rng));
    const double s0 = strength_generic(base, 1e-9).value;

    ProductBasisSet phased = base;
    for (cxd& x : phased.members[2][0]) x *= cxd{std::cos(1.1), std::sin(1.1)};
    CHECK(std::abs(strength_generic(phased, 1e-9).value - s0) <= 1e-12 * s0);

    ProductBasisSet rotated = base;
    const CMat u = random_unitary(rng, 3);
    for (auto& member : rotated.members) member[1] = normalized(apply_matrix(u, member[1]));
    CHECK(std::abs(strength_generic(rotated, 1e-9).value - s0) <= 1e-10 * s0);
}

TEST_CASE("sixparam closed form: special points and phase independence") {
    const double pyr = strength_sixparam_closed(pyramid_point());
    CHECK(std::abs(pyr - pyramid_strength_expected()) < 1e-9);

    const double tiles = strength_sixparam_closed(tiles_point());
    CHECK(std::abs(tiles - tiles_strength_expected()) < 1e-12);

    SixParam p = pyramid_point();
    p.phi_a = 1.3;
    p.phi_b = -2.1;
    CHECK(strength_sixparam_closed(p) == pyr);  // bit-identical

    SixParam degenerate = pyramid_point();
    degenerate.theta_a = std::numbers::pi / 2.0;
    degenerate.gamma_a = std::numbers::pi / 2.0;
    CHECK_THROWS_AS(strength_sixparam_closed(degenerate), std::domain_error);
}

TEST_CASE("sixparam family at its special points reproduces pyramid and tiles strengths") {
    const double pyr = strength_generic(make_pyramid(), 1e-9).value;
    const double via_family = strength_generic(make_six_param(pyramid_point()), 1e-9).value;
    CHECK(std::abs(via_family - pyr) <= 1e-9);

    const double tiles = strength_generic(make_tiles(), 1e-9).value;
    const double via_family_tiles = strength_generic(make_six_param(tiles_point()), 1e-9).value;
    CHECK(std::abs(via_family_tiles - tiles) <= 1e-10);
}

TEST_CASE("sixparam closed form matches the generic strength on random points") {
    std::mt19937 rng(404);
    for (int t = 0; t < 10; ++t) {
        const SixParam p = random_valid_six_param(rng);
        const double closed = strength_sixparam_closed(p);
        const double generic = strength_generic(make_six_param(p), 1e-9).value;
        CHECK(std::abs(closed - generic) <= 1e-9 * std::max(closed, generic));
    }
}

TEST_CASE("tri closed form: zeros, symmetry, denominator") {
    CHECK(strength_tri_f(0.0, 0.3) == 0.0);
    CHECK(strength_tri_f(1.0, -0.4) == 0.0);
    CHECK(strength_tri_f(-1.0, 0.9) == 0.0);

    std::mt19937 rng(55);
    std::uniform_real_distribution<double> ux(-0.98, 0.98), uy(-1.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        const double x = ux(rng), y = uy(rng);
        const double a = strength_tri_f(x, y);
        const double b = strength_tri_f(-x, -y);
        CHECK(std::abs(a - b) <= 1e-12 * std::max({1e-300, a, b}));
        CHECK(strength_tri_closed(x, y) == a * a * a);
    }

    // the denominator vanishes where x^4 - 3x^2 + 1 = 0 meets y = 1
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    CHECK_THROWS_AS(strength_tri_f(golden, 1.0), std::domain_error);
    CHECK_THROWS_AS(strength_tri_f(1.5, 0.0), std::invalid_argument);
}

TEST_CASE("product reference pattern: multiplicativity") {
    const ProductBasisSet pyr = make_pyramid();
    const ProductBasisSet tiles = make_tiles();
    const ProductBasisSet prod = tensor_product_upb(pyr, tiles);
    const OrthPattern ref =
        product_reference_pattern(zero_pattern(pyr, 1e-9), zero_pattern(tiles, 1e-9));
    const StrengthReport rep = strength_generic(prod, ref, 1e-9);
    const double expected = strength_generic(pyr, 1e-9).value * strength_generic(tiles, 1e-9).value;
    CHECK(std::abs(rep.value - expected) <= 1e-9 * expected);
    CHECK(rep.pattern_source == "reference");
    for (const auto& plist : rep.contributing_pairs)
        for (const ContributingPair& cp : plist) CHECK(cp.magnitude > 0.0);
}

TEST_CASE("reference pattern: strength vanishes along a degenerating family path") {
    const OrthPattern ref = zero_pattern(make_six_param(pyramid_point()), 1e-9);
    double prev = 1e300;
    double delta = 0.5;
    for (int step = 0; step < 10; ++step, delta *= 0.2) {
        SixParam p = pyramid_point();
        p.theta_a = std::numbers::pi / 2.0 - delta;
        const double s = strength_generic(make_six_param(p), ref, 1e-9).value;
        CHECK(s < prev);
        prev = s;
    }
    CHECK(prev < 1e-12);
}

TEST_CASE("reference pattern: shape mismatch is rejected") {
    const OrthPattern ref = zero_pattern(make_gen_pyramid7(2), 1e-9);
    CHECK_THROWS_AS(strength_generic(make_pyramid(), ref, 1e-9), std::invalid_argument);
}

TEST_CASE("compare_closed_vs_generic: residual reporting, no exceptions on mismatch") {
    const ClosedVsGeneric good = compare_closed_vs_generic(
        make_pyramid(), strength_sixparam_closed(pyramid_point()), 1e-9);
    CHECK(good.rel_diff < 1e-9);

    // sub-family point: generic and [f(x,y)]^3 are both emitted; equality is a
    // finding, not an assertion
    const double theta = std::numbers::pi / 3.0, alpha = 0.4;
    const ClosedVsGeneric sub = compare_closed_vs_generic(
        make_subfamily(theta, alpha), strength_tri_closed(std::cos(theta), std::cos(alpha)), 1e-9);
    CHECK(sub.generic > 0.0);
    CHECK(sub.closed > 0.0);
    CHECK(sub.ratio > 0.0);

    const ClosedVsGeneric off = compare_closed_vs_generic(make_pyramid(), 123.0, 1e-9);
    CHECK(off.abs_diff > 1.0);  // disagreement reported, not raised
}
