#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/basis.hpp"
#include "core/verify.hpp"

namespace upb {

// Cyclic product of inner products around an ordered cycle of vectors
// (an n-th order Bargmann invariant). |value| <= 1 for unit vectors.
struct BargmannValue {
    cxd value;
    std::vector<int> cycle;
};
BargmannValue bargmann(std::span<const CVec> vectors, std::span<const int> cycle);

struct ContributingPair {
    int i = 0, j = 0;
    double magnitude = 0.0;
};

struct ClosedFormCheck {
    double value = 0.0;
    double abs_residual = 0.0;
    double rel_residual = 0.0;
    double ratio = 0.0;  // generic / closed
};

// Strength of a candidate UPB: per party, the product of the magnitudes of the
// scalar products over the pattern's nonzero pairs; the total is the product
// over parties.
struct StrengthReport {
    double value = 0.0;
    std::vector<double> per_party_factors;
    std::vector<std::vector<ContributingPair>> contributing_pairs;  // per party
    std::string pattern_source;  // "measured" or "reference"
    std::optional<ClosedFormCheck> closed_form;
};

// Measured mode: the zero pattern is classified from the set itself at `tol`.
StrengthReport strength_generic(const ProductBasisSet& set, double tol);

// Reference mode: pairs the reference pattern calls zero are excluded; pairs
// it calls nonzero always contribute, with a factor of exactly 0 when the
// measured magnitude falls at or below `tol`. This makes the strength vanish
// as a family parameter degenerates instead of jumping when the pattern
// reclassifies.
StrengthReport strength_generic(const ProductBasisSet& set, const OrthPattern& reference, double tol);

// Reference pattern of a member-wise tensor product, built so that the product
// set's strength factorizes exactly into the factor strengths: each nonzero
// pair {i1,i2} of A appears once as the pair {(i1,0),(i2,0)}, and each nonzero
// pair {j1,j2} of B once as {(0,j1),(0,j2)}; everything else is excluded.
OrthPattern product_reference_pattern(const OrthPattern& a, const OrthPattern& b);

// Closed form for the six-parameter family's strength. Phases are accepted and
// ignored: the expression contains none, so the output is bit-identical under
// phase changes.
double strength_sixparam_closed(const SixParam& p);

// Closed form |f(x, y)| for the equal-angle sub-family, x = cos(theta),
// y = cos(alpha), transcribed term for term with no simplification.
double strength_tri_f(double x, double y);

// Sub-family strength [f(x, y)]^3.
double strength_tri_closed(double x, double y);

struct ClosedVsGeneric {
    double generic = 0.0;
    double closed = 0.0;
    double abs_diff = 0.0;
    double rel_diff = 0.0;
    double ratio = 0.0;
};

// Cross-validation report; disagreement is a finding, never an error.
ClosedVsGeneric compare_closed_vs_generic(const ProductBasisSet& set, double closed_value, double tol);

}  // namespace upb
