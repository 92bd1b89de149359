#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "core/linalg.hpp"

namespace upb {

// An ordered set of multipartite product states: member j holds one unit
// vector per party. Candidate unextendible product bases live here.
struct ProductBasisSet {
    std::vector<int> dims;                      // party dimensions d_1..d_k
    std::vector<std::vector<CVec>> members;     // members[j][p], |members[j][p]| = dims[p]
    std::string label;

    // Populated by tensor_product_upb so downstream consumers (verification by
    // the factor theorem, product reference patterns) can reach the factors.
    std::shared_ptr<const ProductBasisSet> factor_a;
    std::shared_ptr<const ProductBasisSet> factor_b;

    int parties() const { return static_cast<int>(dims.size()); }
    int size() const { return static_cast<int>(members.size()); }

    // Full product vector of member j (dimension prod(dims)).
    CVec product_vector(int j) const;

    // Enforces the structural invariants: k >= 2, n >= 1, per-party dimensions
    // match, every vector unit norm within 1e-10. Throws std::invalid_argument.
    void validate() const;
};

struct SixParam {
    double theta_a = 0, gamma_a = 0, phi_a = 0;
    double theta_b = 0, gamma_b = 0, phi_b = 0;
};

struct TriBlock {
    double theta1 = 0, theta2 = 0, theta3 = 0, theta4 = 0;
    double lambda = 0, mu = 0, chi = 0;
};

// 21 parameters: one block per party recipe (v, w, u).
struct TriParam {
    TriBlock v, w, u;
};

ProductBasisSet make_pyramid();
ProductBasisSet make_tiles();
ProductBasisSet make_six_param(const SixParam& p);
ProductBasisSet make_gen_pyramid7(int m);

// prenorms, when given, receives the pre-normalization norm of each block's
// index-1 recipe vector (the one whose printed normalizer is not closed-form).
ProductBasisSet make_tripartite(const TriParam& p, std::vector<double>* prenorms = nullptr);

// Sub-family: all four angles = theta in every block, chi = 0, lambda = mu = alpha.
ProductBasisSet make_subfamily(double theta, double alpha);

// Party-wise Kronecker product of two sets with equal party count; members
// ordered i-major over (i, j).
ProductBasisSet tensor_product_upb(const ProductBasisSet& a, const ProductBasisSet& b);

// Named-family metadata (dimension formulas). Only entries with constructor
// set have build recipes in this library.
struct FamilyInfo {
    std::string name;
    std::string space;
    std::string members;
    std::string constructor;  // empty when no explicit recipe is available
};
std::span<const FamilyInfo> family_catalog();

// Parameter point reproducing the Pyramid inside the six-parameter family:
// phases 0, all angles arccos((sqrt(5)-1)/2).
SixParam pyramid_point();
// Tiles point: phases 0, all angles 3*pi/4.
SixParam tiles_point();

}  // namespace upb
