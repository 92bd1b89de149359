#pragma once

// Independent numerical extendibility oracle for bipartite sets: minimize the
// overlap of a product state a (x) b with every member by alternating
// smallest-eigenvector updates (seesaw), over basis-pair and random starts.
// Declares the set extendible when the best residual max-overlap drops below
// the threshold. Used only to cross-check the combinatorial verifier.

#include <algorithm>
#include <random>

#include "core/basis.hpp"
#include "core/linalg.hpp"
#include "support/random_support.hpp"

namespace upb::testsupport {

struct OracleResult {
    bool extendible = false;
    double best_max_overlap = 0.0;
};

namespace detail {

inline CVec smallest_eigvec(const CMat& m) {
    const EigResult e = hermitian_eig(m);
    CVec v(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r) v[r] = e.vectors(r, 0);
    return normalized(v);
}

inline double max_overlap(const ProductBasisSet& set, const CVec& a, const CVec& b) {
    double worst = 0.0;
    for (int i = 0; i < set.size(); ++i)
        worst = std::max(worst, std::abs(inner(a, set.members[static_cast<std::size_t>(i)][0]) *
                                         inner(b, set.members[static_cast<std::size_t>(i)][1])));
    return worst;
}

}  // namespace detail

inline OracleResult seesaw_extendibility_oracle(const ProductBasisSet& set, unsigned seed,
                                                int random_starts = 48, int max_iters = 250,
                                                double threshold = 1e-6) {
    const int d0 = set.dims[0];
    const int d1 = set.dims[1];
    std::mt19937 rng(seed);

    std::vector<std::pair<CVec, CVec>> starts;
    for (int i = 0; i < d0; ++i)
        for (int j = 0; j < d1; ++j) {
            CVec a(static_cast<std::size_t>(d0), cxd{0.0, 0.0}), b(static_cast<std::size_t>(d1), cxd{0.0, 0.0});
            a[static_cast<std::size_t>(i)] = 1.0;
            b[static_cast<std::size_t>(j)] = 1.0;
            starts.emplace_back(std::move(a), std::move(b));
        }
    for (int s = 0; s < random_starts; ++s)
        starts.emplace_back(random_unit_vector(rng, d0), random_unit_vector(rng, d1));

    OracleResult res;
    res.best_max_overlap = 1.0;
    for (auto& [a, b] : starts) {
        double prev = 1e300;
        for (int it = 0; it < max_iters; ++it) {
            CMat ma(static_cast<std::size_t>(d0), static_cast<std::size_t>(d0));
            for (int i = 0; i < set.size(); ++i) {
                const CVec& v = set.members[static_cast<std::size_t>(i)][0];
                const CVec& w = set.members[static_cast<std::size_t>(i)][1];
                const double c = std::norm(inner(b, w));
                for (int r = 0; r < d0; ++r)
                    for (int cc = 0; cc < d0; ++cc)
                        ma(static_cast<std::size_t>(r), static_cast<std::size_t>(cc)) +=
                            c * v[static_cast<std::size_t>(r)] * std::conj(v[static_cast<std::size_t>(cc)]);
            }
            a = detail::smallest_eigvec(ma);

            CMat mb(static_cast<std::size_t>(d1), static_cast<std::size_t>(d1));
            double objective = 0.0;
            for (int i = 0; i < set.size(); ++i) {
                const CVec& v = set.members[static_cast<std::size_t>(i)][0];
                const CVec& w = set.members[static_cast<std::size_t>(i)][1];
                const double c = std::norm(inner(a, v));
                objective += c * std::norm(inner(b, w));
                for (int r = 0; r < d1; ++r)
                    for (int cc = 0; cc < d1; ++cc)
                        mb(static_cast<std::size_t>(r), static_cast<std::size_t>(cc)) +=
                            c * w[static_cast<std::size_t>(r)] * std::conj(w[static_cast<std::size_t>(cc)]);
            }
            b = detail::smallest_eigvec(mb);
            if (prev - objective < 1e-18) break;
            prev = objective;
        }
        res.best_max_overlap = std::min(res.best_max_overlap, detail::max_overlap(set, a, b));
        if (res.best_max_overlap < threshold * 1e-2) break;
    }
    res.extendible = res.best_max_overlap < threshold;
    return res;
}

}  // namespace upb::testsupport
