#include "core/basis.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace upb {

namespace {

constexpr double kPi = std::numbers::pi;

CVec ket(int i, int dim = 3) {
    CVec v(static_cast<std::size_t>(dim), cxd{0.0, 0.0});
    v[static_cast<std::size_t>(i)] = 1.0;
    return v;
}

cxd phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

ProductBasisSet assemble(std::vector<int> dims, std::vector<std::vector<CVec>> members,
                         std::string label) {
    ProductBasisSet set;
    set.dims = std::move(dims);
    set.members = std::move(members);
    set.label = std::move(label);
    set.validate();
    return set;
}

}  // namespace

CVec ProductBasisSet::product_vector(int j) const {
    CVec out = members[static_cast<std::size_t>(j)][0];
    for (int p = 1; p < parties(); ++p) out = tensor(out, members[static_cast<std::size_t>(j)][static_cast<std::size_t>(p)]);
    return out;
}

void ProductBasisSet::validate() const {
    if (parties() < 2) throw std::invalid_argument("ProductBasisSet: need at least 2 parties");
    if (size() < 1) throw std::invalid_argument("ProductBasisSet: need at least 1 member");
    for (int d : dims)
        if (d < 1) throw std::invalid_argument("ProductBasisSet: nonpositive party dimension");
    for (int j = 0; j < size(); ++j) {
        const auto& member = members[static_cast<std::size_t>(j)];
        if (static_cast<int>(member.size()) != parties())
            throw std::invalid_argument("ProductBasisSet: member " + std::to_string(j) +
                                        " has wrong party count");
        for (int p = 0; p < parties(); ++p) {
            if (static_cast<int>(member[static_cast<std::size_t>(p)].size()) != dims[static_cast<std::size_t>(p)])
                throw std::invalid_argument("ProductBasisSet: member " + std::to_string(j) +
                                            " party " + std::to_string(p) + " has wrong dimension");
            const double n = norm(member[static_cast<std::size_t>(p)]);
            if (std::abs(n - 1.0) > 1e-10)
                throw std::invalid_argument("ProductBasisSet: member " + std::to_string(j) +
                                            " party " + std::to_string(p) + " not unit norm (" +
                                            std::to_string(n) + ")");
        }
    }
}

ProductBasisSet make_pyramid() {
    const double c45 = std::cos(4.0 * kPi / 5.0);  // negative
    const double h = std::sqrt(-c45);
    const double nrm = 1.0 / std::sqrt(1.0 + std::abs(c45));
    std::array<CVec, 5> v;
    for (int i = 0; i < 5; ++i) {
        const double a = 2.0 * kPi * i / 5.0;
        v[static_cast<std::size_t>(i)] =
            normalized({nrm * std::cos(a), nrm * std::sin(a), nrm * h});
    }
    std::vector<std::vector<CVec>> members;
    for (int i = 0; i < 5; ++i)
        members.push_back({v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>((2 * i) % 5)]});
    return assemble({3, 3}, std::move(members), "Pyramid");
}

ProductBasisSet make_tiles() {
    const double r2 = 1.0 / std::sqrt(2.0);
    const double r3 = 1.0 / std::sqrt(3.0);
    const CVec k0 = ket(0), k1 = ket(1), k2 = ket(2);
    const CVec v01{r2, -r2, 0.0}, v12{0.0, r2, -r2}, vu{r3, r3, r3};
    const std::array<CVec, 5> v{k0, v01, k2, v12, vu};
    const std::array<CVec, 5> w{v01, k2, v12, k0, vu};
    std::vector<std::vector<CVec>> members;
    for (int i = 0; i < 5; ++i)
        members.push_back({normalized(v[static_cast<std::size_t>(i)]), normalized(w[static_cast<std::size_t>(i)])});
    return assemble({3, 3}, std::move(members), "Tiles");
}

namespace {

// The five A-side / B-side vectors of the six-parameter family. The v side
// carries the B parameters and the w side the A parameters.
std::array<CVec, 5> six_param_side(double theta, double gamma, double phi, char party) {
    const double st = std::sin(theta), ct = std::cos(theta);
    const double sg = std::sin(gamma), cg = std::cos(gamma);
    const double nsq = cg * cg + sg * sg * ct * ct;
    if (std::sqrt(nsq) <= 1e-12)
        throw std::domain_error(std::string("six-param normalizer N_") + party +
                                " vanishes (party " + party + ")");
    const cxd e = phase(phi);
    std::array<CVec, 5> out;
    if (party == 'B') {
        out[0] = ket(1);
        out[1] = {sg * st, cg * e, -sg * ct};
        out[2] = ket(0);
        out[3] = {ct, 0.0, st};
        out[4] = {0.0, sg * ct * e, cg};
    } else {
        out[0] = ket(0);
        out[1] = ket(1);
        out[2] = {ct, 0.0, st};
        out[3] = {sg * st, cg * e, -sg * ct};
        out[4] = {0.0, sg * ct * e, cg};
    }
    for (CVec& v : out) v = normalized(v);
    return out;
}

}  // namespace

ProductBasisSet make_six_param(const SixParam& p) {
    const auto v = six_param_side(p.theta_b, p.gamma_b, p.phi_b, 'B');
    const auto w = six_param_side(p.theta_a, p.gamma_a, p.phi_a, 'A');
    std::vector<std::vector<CVec>> members;
    for (int i = 0; i < 5; ++i)
        members.push_back({v[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(i)]});
    return assemble({3, 3}, std::move(members), "SixParam");
}

ProductBasisSet make_gen_pyramid7(int m) {
    if (m != 2 && m != 3)
        throw std::invalid_argument("make_gen_pyramid7: m must be 2 or 3; for m = " +
                                    std::to_string(m) +
                                    " the height sqrt(-cos(2*m*pi/7)) would be imaginary");
    const double c = std::cos(2.0 * m * kPi / 7.0);  // negative for m in {2,3}
    const double h = std::sqrt(-c);
    const double nrm = 1.0 / std::sqrt(1.0 + std::abs(c));
    std::array<CVec, 7> v;
    for (int i = 0; i < 7; ++i) {
        const double a = 2.0 * kPi * i / 7.0;
        v[static_cast<std::size_t>(i)] =
            normalized({nrm * std::cos(a), nrm * std::sin(a), nrm * h});
    }
    std::vector<std::vector<CVec>> members;
    for (int i = 0; i < 7; ++i)
        members.push_back({v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>((2 * i) % 7)],
                           v[static_cast<std::size_t>((3 * i) % 7)]});
    return assemble({3, 3, 3}, std::move(members),
                    m == 2 ? "Sept" : "GenPyramid7(m=3)");
}

namespace {

// The seven-vector recipe behind each party of the tripartite family.
// Index 1 is the only vector whose printed normalizer is not closed-form; its
// raw norm is reported through prenorm for inspection.
std::array<CVec, 7> tripartite_recipe(const TriBlock& b, double* prenorm) {
    const double s1 = std::sin(b.theta1), c1 = std::cos(b.theta1);
    const double s2 = std::sin(b.theta2), c2 = std::cos(b.theta2);
    const double s3 = std::sin(b.theta3), c3 = std::cos(b.theta3);
    const double s4 = std::sin(b.theta4), c4 = std::cos(b.theta4);

    std::array<CVec, 7> v;
    v[0] = ket(0);
    v[1] = {s4 * c2 * c3 * phase(b.lambda - b.chi) - s4 * c1 * s2 * s3,
            s3 * c1 * c4 * phase(-b.mu) - s3 * s1 * c2 * s4 * phase(-b.chi),
            c3 * c4 * phase(b.lambda - b.mu) - s1 * s2 * s3 * s4};
    v[2] = ket(1);
    v[3] = {c4 * phase(b.mu), s4 * s2, -s4 * c2 * phase(b.chi)};
    v[4] = {c1, 0.0, s1};
    v[5] = {0.0, c2, s2 * phase(b.chi)};
    v[6] = {s3 * s1, c3 * phase(-b.lambda), -s3 * c1};

    if (prenorm) *prenorm = norm(v[1]);
    return v;
}

}  // namespace

ProductBasisSet make_tripartite(const TriParam& p, std::vector<double>* prenorms) {
    // Multiplicative index maps per party and their mod-7 inverses, used to
    // name the member a degenerate recipe vector belongs to.
    static constexpr int kMult[3] = {1, 2, 3};
    static constexpr int kInv[3] = {1, 4, 5};

    if (prenorms) prenorms->clear();
    std::array<std::array<CVec, 7>, 3> recipe;
    const TriBlock* blocks[3] = {&p.v, &p.w, &p.u};
    for (int party = 0; party < 3; ++party) {
        double pre = 0.0;
        recipe[static_cast<std::size_t>(party)] = tripartite_recipe(*blocks[party], &pre);
        if (prenorms) prenorms->push_back(pre);
        for (int j = 0; j < 7; ++j) {
            CVec& vec = recipe[static_cast<std::size_t>(party)][static_cast<std::size_t>(j)];
            try {
                vec = normalized(vec);
            } catch (const std::domain_error&) {
                const int member = (j * kInv[party]) % 7;
                throw std::domain_error("make_tripartite: degenerate normalizer at member " +
                                        std::to_string(member) + ", party " +
                                        std::to_string(party) + " (recipe index " +
                                        std::to_string(j) + ")");
            }
        }
    }

    std::vector<std::vector<CVec>> members;
    for (int i = 0; i < 7; ++i) {
        std::vector<CVec> member;
        for (int party = 0; party < 3; ++party)
            member.push_back(recipe[static_cast<std::size_t>(party)]
                                   [static_cast<std::size_t>((kMult[party] * i) % 7)]);
        members.push_back(std::move(member));
    }
    return assemble({3, 3, 3}, std::move(members), "Tripartite");
}

ProductBasisSet make_subfamily(double theta, double alpha) {
    TriBlock b;
    b.theta1 = b.theta2 = b.theta3 = b.theta4 = theta;
    b.lambda = b.mu = alpha;  // gauge chi = 0; strength depends on lambda-chi, mu-chi only
    b.chi = 0.0;
    ProductBasisSet set = make_tripartite({b, b, b});
    set.label = "Subfamily";
    return set;
}

ProductBasisSet tensor_product_upb(const ProductBasisSet& a, const ProductBasisSet& b) {
    if (a.parties() != b.parties())
        throw std::invalid_argument("tensor_product_upb: party counts differ (" +
                                    std::to_string(a.parties()) + " vs " +
                                    std::to_string(b.parties()) + ")");
    std::vector<int> dims;
    for (int p = 0; p < a.parties(); ++p)
        dims.push_back(a.dims[static_cast<std::size_t>(p)] * b.dims[static_cast<std::size_t>(p)]);

    std::vector<std::vector<CVec>> members;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j) {
            std::vector<CVec> member;
            for (int p = 0; p < a.parties(); ++p)
                member.push_back(tensor(a.members[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)],
                                        b.members[static_cast<std::size_t>(j)][static_cast<std::size_t>(p)]));
            members.push_back(std::move(member));
        }

    ProductBasisSet out = assemble(std::move(dims), std::move(members),
                                   "Tensor(" + a.label + "," + b.label + ")");
    out.factor_a = std::make_shared<ProductBasisSet>(a);
    out.factor_b = std::make_shared<ProductBasisSet>(b);
    return out;
}

std::span<const FamilyInfo> family_catalog() {
    static const std::vector<FamilyInfo> table{
        {"Pyramid", "H3 x H3", "5 (minimal)", "pyramid"},
        {"Tiles", "H3 x H3", "5 (minimal)", "tiles"},
        {"SixParam", "H3 x H3", "5 (minimal)", "sixparam"},
        {"GenPyramid7 / Sept", "H3 x H3 x H3", "7 (minimal)", "genpyr7"},
        {"Tripartite family", "H3 x H3 x H3", "7 (minimal)", "tripartite"},
        {"Sub-family", "H3 x H3 x H3", "7 (minimal)", "subfamily"},
        {"Gen Shifts", "H2^(2k-1)", "2k (minimal)", ""},
        {"Gen Pyramids", "H3^n, 2n+1 = p prime", "p (minimal)", ""},
        {"Quad Res", "Hn x Hn, 2n-1 = p prime, p = 4m+1", "p (minimal)", ""},
        {"Gen Tiles1", "Hn x Hn, n even", "(n-1)^2 (non-minimal)", ""},
        {"Gen Tiles2", "Hm x Hn, n >= m, n > 3, m >= 3", "nm-2m+1 (non-minimal)", ""},
    };
    return table;
}

SixParam pyramid_point() {
    const double t = std::acos((std::sqrt(5.0) - 1.0) / 2.0);
    return {t, t, 0.0, t, t, 0.0};
}

SixParam tiles_point() {
    const double t = 3.0 * kPi / 4.0;
    return {t, t, 0.0, t, t, 0.0};
}

}  // namespace upb
