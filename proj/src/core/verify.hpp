#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/basis.hpp"
#include "core/config.hpp"

namespace upb {

// Per party, which member pairs have a (numerically) zero scalar product.
struct OrthPattern {
    int n = 0;
    double tol = 0.0;
    std::vector<std::vector<char>> zero;  // [party][i*n + j], symmetric, diagonal false

    int parties() const { return static_cast<int>(zero.size()); }
    bool is_zero(int p, int i, int j) const {
        return zero[static_cast<std::size_t>(p)][static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                                                 static_cast<std::size_t>(j)] != 0;
    }
};

OrthPattern zero_pattern(const ProductBasisSet& set, double tol);

struct OrthogonalityReport {
    bool orthogonal = false;
    std::vector<std::pair<int, int>> violations;  // member pairs no party makes orthogonal
};

OrthogonalityReport check_mutual_orthogonality(const ProductBasisSet& set, double tol);

// A product state orthogonal to every member, found from a rank-deficient
// party assignment.
struct Witness {
    std::vector<int> assignment;     // member index -> party carrying its orthogonality
    std::vector<CVec> party_vectors; // one unit vector per party
    double max_overlap = 0.0;        // max_i |<witness, psi_i>|
};

struct UpbReport {
    bool orthogonal = false;
    bool unextendible = false;
    std::optional<Witness> witness;  // present iff extendible
    OrthPattern pattern;
    std::vector<std::pair<int, int>> violating_pairs;
    std::string method;              // "partition-enumeration" or "tensor-factor-theorem"
    bool is_upb() const { return orthogonal && unextendible; }
};

// Exhaustive partition criterion: the set is extendible iff some assignment of
// members to parties leaves every party's assigned vectors short of spanning
// that party's space. Enumerates all k^n assignments in lexicographic order
// and keeps the first witness found. Throws too_large_error when
// n > max_members.
UpbReport check_unextendible(const ProductBasisSet& set, const RunConfig& cfg);

// Orthogonality + unextendibility. Sets with more members than max_members are
// handled by verify_tensor_product when factors are attached, otherwise the
// size error propagates.
UpbReport is_upb(const ProductBasisSet& set, const RunConfig& cfg);

// Validates that `prod` is the member-wise tensor product of a and b, verifies
// both factors by enumeration, checks the product's orthogonality directly,
// and applies the product theorem for unextendibility. The report's method
// field records this route.
UpbReport verify_tensor_product(const ProductBasisSet& prod, const ProductBasisSet& a,
                                const ProductBasisSet& b, const RunConfig& cfg);

}  // namespace upb
