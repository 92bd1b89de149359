#include "core/states.hpp"

#include <cmath>
#include <stdexcept>

#include "core/verify.hpp"

namespace upb {

DensityMatrix upb_complement_state(const ProductBasisSet& set, const RunConfig& cfg) {
    std::size_t dim = 1;
    for (int d : set.dims) dim *= static_cast<std::size_t>(d);
    const std::size_t n = static_cast<std::size_t>(set.size());
    if (n >= dim)
        throw std::domain_error("upb_complement_state: member count " + std::to_string(n) +
                                " leaves no complement in dimension " + std::to_string(dim));
    const OrthogonalityReport orth = check_mutual_orthogonality(set, cfg.tol_zero);
    if (!orth.orthogonal)
        throw std::domain_error("upb_complement_state: members are not mutually orthogonal (" +
                                std::to_string(orth.violations.size()) + " violating pairs)");

    CMat rho = CMat::identity(dim);
    for (int j = 0; j < set.size(); ++j) {
        const CVec psi = set.product_vector(j);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) rho(r, c) -= psi[r] * std::conj(psi[c]);
    }
    const double scale = static_cast<double>(dim) - static_cast<double>(n);
    for (cxd& x : rho.a) x /= scale;
    // Exact Hermitian symmetrization; the construction is Hermitian up to rounding.
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = r + 1; c < dim; ++c) {
            const cxd z = 0.5 * (rho(r, c) + std::conj(rho(c, r)));
            rho(r, c) = z;
            rho(c, r) = std::conj(z);
        }
    DensityMatrix out;
    out.dims = set.dims;
    double tr = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
        rho(r, r) = rho(r, r).real();
        tr += rho(r, r).real();
    }
    out.rho = std::move(rho);
    out.trace = tr;
    return out;
}

PptReport ppt_check(const DensityMatrix& rho, double tol, bool include_pair_cuts) {
    if (tol <= 0.0) throw std::invalid_argument("ppt_check: tol must be positive");
    const int k = static_cast<int>(rho.dims.size());
    PptReport rep;
    rep.tol = tol;
    rep.ppt = true;

    auto add_cut = [&](std::vector<int> parties) {
        CMat pt = rho.rho;
        for (int p : parties) pt = partial_transpose(pt, rho.dims, p);
        const std::vector<double> ev = hermitian_eigenvalues(pt);
        PptCut cut;
        cut.parties = std::move(parties);
        cut.min_eigenvalue = ev.front();
        if (cut.min_eigenvalue < -tol) rep.ppt = false;
        rep.cuts.push_back(std::move(cut));
    };

    for (int p = 0; p < k; ++p) add_cut({p});
    if (include_pair_cuts && k >= 3)
        for (int p = 0; p < k; ++p)
            for (int q = p + 1; q < k; ++q) add_cut({p, q});
    return rep;
}

StateFacts complement_state_facts(const ProductBasisSet& set, const RunConfig& cfg,
                                  bool include_pair_cuts) {
    const DensityMatrix rho = upb_complement_state(set, cfg);
    StateFacts facts;
    facts.dims = set.dims;
    facts.total_dim = static_cast<int>(rho.rho.rows);
    facts.n_members = set.size();
    facts.trace = rho.trace;

    const std::vector<double> ev = hermitian_eigenvalues(rho.rho);
    facts.eig_min = ev.front();
    facts.eig_max = ev.back();
    const double cutoff = cfg.tol_rank * std::max(ev.back(), 1.0);
    for (double x : ev)
        if (x > cutoff) ++facts.rank;

    for (int j = 0; j < set.size(); ++j) {
        const CVec psi = set.product_vector(j);
        cxd acc = 0.0;
        for (std::size_t r = 0; r < rho.rho.rows; ++r) {
            cxd rowdot = 0.0;
            for (std::size_t c = 0; c < rho.rho.cols; ++c) rowdot += rho.rho(r, c) * psi[c];
            acc += std::conj(psi[r]) * rowdot;
        }
        facts.max_member_overlap = std::max(facts.max_member_overlap, std::abs(acc));
    }

    facts.ppt = ppt_check(rho, cfg.tol_ppt, include_pair_cuts);
    return facts;
}

}  // namespace upb
