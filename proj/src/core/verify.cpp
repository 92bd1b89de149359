#include "core/verify.hpp"

#include <cmath>
#include <stdexcept>

#include "core/errors.hpp"

namespace upb {

OrthPattern zero_pattern(const ProductBasisSet& set, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("zero_pattern: tol must be positive");
    OrthPattern pat;
    pat.n = set.size();
    pat.tol = tol;
    const std::size_t n = static_cast<std::size_t>(set.size());
    pat.zero.assign(static_cast<std::size_t>(set.parties()), std::vector<char>(n * n, 0));
    for (int p = 0; p < set.parties(); ++p)
        for (int i = 0; i < set.size(); ++i)
            for (int j = i + 1; j < set.size(); ++j) {
                const double mag = std::abs(inner(set.members[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)],
                                                  set.members[static_cast<std::size_t>(j)][static_cast<std::size_t>(p)]));
                if (mag <= tol) {
                    pat.zero[static_cast<std::size_t>(p)][static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] = 1;
                    pat.zero[static_cast<std::size_t>(p)][static_cast<std::size_t>(j) * n + static_cast<std::size_t>(i)] = 1;
                }
            }
    return pat;
}

OrthogonalityReport check_mutual_orthogonality(const ProductBasisSet& set, double tol) {
    const OrthPattern pat = zero_pattern(set, tol);
    OrthogonalityReport rep;
    rep.orthogonal = true;
    for (int i = 0; i < set.size(); ++i)
        for (int j = i + 1; j < set.size(); ++j) {
            bool covered = false;
            for (int p = 0; p < set.parties() && !covered; ++p) covered = pat.is_zero(p, i, j);
            if (!covered) {
                rep.orthogonal = false;
                rep.violations.emplace_back(i, j);
            }
        }
    return rep;
}

namespace {

// Unit vector orthogonal to the span of `vecs` in dimension dim: smallest
// eigenvector of the frame operator sum_i |v_i><v_i|. An empty list yields the
// first basis vector.
CVec complement_vector(const std::vector<CVec>& vecs, int dim) {
    if (vecs.empty()) {
        CVec e(static_cast<std::size_t>(dim), cxd{0.0, 0.0});
        e[0] = 1.0;
        return e;
    }
    CMat frame(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
    for (const CVec& v : vecs)
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                frame(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) +=
                    v[static_cast<std::size_t>(i)] * std::conj(v[static_cast<std::size_t>(j)]);
    const EigResult eig = hermitian_eig(frame);
    CVec out(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i)
        out[static_cast<std::size_t>(i)] = eig.vectors(static_cast<std::size_t>(i), 0);
    return normalized(out);
}

double witness_max_overlap(const ProductBasisSet& set, const std::vector<CVec>& party_vectors) {
    double worst = 0.0;
    for (int i = 0; i < set.size(); ++i) {
        cxd ov = 1.0;
        for (int p = 0; p < set.parties(); ++p)
            ov *= inner(party_vectors[static_cast<std::size_t>(p)],
                        set.members[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)]);
        worst = std::max(worst, std::abs(ov));
    }
    return worst;
}

}  // namespace

UpbReport check_unextendible(const ProductBasisSet& set, const RunConfig& cfg) {
    const int n = set.size();
    const int k = set.parties();
    if (n > cfg.max_members)
        throw too_large_error("check_unextendible: " + std::to_string(n) + " members exceed the cap of " +
                              std::to_string(cfg.max_members) +
                              "; the enumeration is k^n assignments, which is infeasible at this size "
                              "(raise max_members explicitly to override)");
    long double total_ld = 1.0L;
    for (int i = 0; i < n; ++i) total_ld *= k;
    if (total_ld > 4.0e18L)
        throw too_large_error("check_unextendible: k^n overflows the enumeration counter");
    const unsigned long long total = static_cast<unsigned long long>(total_ld);

    UpbReport rep;
    rep.method = "partition-enumeration";

    std::vector<int> sigma(static_cast<std::size_t>(n), 0);
    std::vector<CVec> assigned;
    for (unsigned long long c = 0; c < total; ++c) {
        // Decode with member 0 as the most significant digit so the first
        // witness found is the lexicographically lowest assignment.
        unsigned long long rem = c;
        for (int i = n - 1; i >= 0; --i) {
            sigma[static_cast<std::size_t>(i)] = static_cast<int>(rem % static_cast<unsigned long long>(k));
            rem /= static_cast<unsigned long long>(k);
        }
        bool all_deficient = true;
        for (int p = 0; p < k && all_deficient; ++p) {
            assigned.clear();
            for (int i = 0; i < n; ++i)
                if (sigma[static_cast<std::size_t>(i)] == p)
                    assigned.push_back(set.members[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)]);
            // An empty assignment has rank 0 and is always deficient.
            const int r = assigned.empty() ? 0 : rank_with_tol(assigned, cfg.tol_rank);
            if (r >= set.dims[static_cast<std::size_t>(p)]) all_deficient = false;
        }
        if (all_deficient) {
            Witness w;
            w.assignment = sigma;
            for (int p = 0; p < k; ++p) {
                std::vector<CVec> vecs;
                for (int i = 0; i < n; ++i)
                    if (sigma[static_cast<std::size_t>(i)] == p)
                        vecs.push_back(set.members[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)]);
                w.party_vectors.push_back(complement_vector(vecs, set.dims[static_cast<std::size_t>(p)]));
            }
            w.max_overlap = witness_max_overlap(set, w.party_vectors);
            rep.unextendible = false;
            rep.witness = std::move(w);
            return rep;
        }
    }
    rep.unextendible = true;
    return rep;
}

UpbReport is_upb(const ProductBasisSet& set, const RunConfig& cfg) {
    if (set.size() > cfg.max_members && set.factor_a && set.factor_b)
        return verify_tensor_product(set, *set.factor_a, *set.factor_b, cfg);

    UpbReport rep = check_unextendible(set, cfg);
    rep.pattern = zero_pattern(set, cfg.tol_zero);
    OrthogonalityReport orth = check_mutual_orthogonality(set, cfg.tol_zero);
    rep.orthogonal = orth.orthogonal;
    rep.violating_pairs = std::move(orth.violations);
    return rep;
}

UpbReport verify_tensor_product(const ProductBasisSet& prod, const ProductBasisSet& a,
                                const ProductBasisSet& b, const RunConfig& cfg) {
    if (a.parties() != b.parties() || a.parties() != prod.parties())
        throw std::invalid_argument("verify_tensor_product: party counts do not match");
    for (int p = 0; p < prod.parties(); ++p)
        if (prod.dims[static_cast<std::size_t>(p)] !=
            a.dims[static_cast<std::size_t>(p)] * b.dims[static_cast<std::size_t>(p)])
            throw std::invalid_argument("verify_tensor_product: dims are not products of factor dims");
    if (prod.size() != a.size() * b.size())
        throw std::invalid_argument("verify_tensor_product: member count is not the product of factor counts");

    // Member-wise reconstruction, i-major ordering.
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j) {
            const int idx = i * b.size() + j;
            for (int p = 0; p < prod.parties(); ++p) {
                const CVec t = tensor(a.members[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)],
                                      b.members[static_cast<std::size_t>(j)][static_cast<std::size_t>(p)]);
                const CVec& got = prod.members[static_cast<std::size_t>(idx)][static_cast<std::size_t>(p)];
                double dev = 0.0;
                for (std::size_t t0 = 0; t0 < t.size(); ++t0)
                    dev = std::max(dev, std::abs(t[t0] - got[t0]));
                if (dev > 1e-12)
                    throw std::invalid_argument("verify_tensor_product: member " + std::to_string(idx) +
                                                " does not reconstruct from the declared factors");
            }
        }

    const UpbReport rep_a = is_upb(a, cfg);
    const UpbReport rep_b = is_upb(b, cfg);

    UpbReport rep;
    rep.method = "tensor-factor-theorem (factors verified by enumeration)";
    rep.pattern = zero_pattern(prod, cfg.tol_zero);
    OrthogonalityReport orth = check_mutual_orthogonality(prod, cfg.tol_zero);
    rep.orthogonal = orth.orthogonal;
    rep.violating_pairs = std::move(orth.violations);
    rep.unextendible = rep_a.is_upb() && rep_b.is_upb();

    // An extendible factor lifts to an extension of the product: pair its
    // witness with any fixed product state of the other factor.
    if (!rep.unextendible) {
        const bool a_side = !rep_a.unextendible && rep_a.witness.has_value();
        const UpbReport& bad = a_side ? rep_a : rep_b;
        if (bad.witness) {
            Witness w;
            w.assignment.assign(static_cast<std::size_t>(prod.size()), -1);
            for (int i = 0; i < a.size(); ++i)
                for (int j = 0; j < b.size(); ++j)
                    w.assignment[static_cast<std::size_t>(i * b.size() + j)] =
                        bad.witness->assignment[static_cast<std::size_t>(a_side ? i : j)];
            for (int p = 0; p < prod.parties(); ++p) {
                const int other_dim = a_side ? b.dims[static_cast<std::size_t>(p)]
                                             : a.dims[static_cast<std::size_t>(p)];
                CVec e(static_cast<std::size_t>(other_dim), cxd{0.0, 0.0});
                e[0] = 1.0;
                const CVec& wp = bad.witness->party_vectors[static_cast<std::size_t>(p)];
                w.party_vectors.push_back(a_side ? tensor(wp, e) : tensor(e, wp));
            }
            w.max_overlap = witness_max_overlap(prod, w.party_vectors);
            rep.witness = std::move(w);
        }
    }
    return rep;
}

}  // namespace upb
