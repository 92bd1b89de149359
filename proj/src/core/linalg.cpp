#include "core/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "core/errors.hpp"

namespace upb {

CMat CMat::identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

cxd inner(const CVec& u, const CVec& v) {
    if (u.size() != v.size())
        throw std::invalid_argument("inner: dimension mismatch (" + std::to_string(u.size()) +
                                    " vs " + std::to_string(v.size()) + ")");
    cxd acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
    return acc;
}

double norm(const CVec& v) {
    double s = 0.0;
    for (const cxd& x : v) s += std::norm(x);
    return std::sqrt(s);
}

CVec normalized(const CVec& v, double floor) {
    const double n = norm(v);
    if (n <= floor)
        throw std::domain_error("normalized: vector norm " + std::to_string(n) +
                                " below floor " + std::to_string(floor));
    CVec out = v;
    for (cxd& x : out) x /= n;
    return out;
}

CVec tensor(const CVec& u, const CVec& v) {
    CVec out(u.size() * v.size());
    std::size_t k = 0;
    for (const cxd& a : u)
        for (const cxd& b : v) out[k++] = a * b;
    return out;
}

CMat gram(std::span<const CVec> vectors) {
    const std::size_t n = vectors.size();
    for (const CVec& v : vectors)
        if (v.size() != vectors[0].size())
            throw std::invalid_argument("gram: vectors do not share one dimension");
    CMat g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        g(i, i) = inner(vectors[i], vectors[i]).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const cxd z = inner(vectors[i], vectors[j]);
            g(i, j) = z;
            g(j, i) = std::conj(z);
        }
    }
    return g;
}

int rank_with_tol(std::span<const CVec> vectors, double tol) {
    if (vectors.empty()) throw std::invalid_argument("rank_with_tol: empty vector list");
    const std::vector<double> ev = hermitian_eigenvalues(gram(vectors));
    const double cutoff = tol * std::max(ev.back(), 1.0);
    int r = 0;
    for (double x : ev)
        if (x > cutoff) ++r;
    return r;
}

namespace {

double fro_norm(const CMat& m) {
    double s = 0.0;
    for (const cxd& x : m.a) s += std::norm(x);
    return std::sqrt(s);
}

double offdiag_fro(const CMat& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

}  // namespace

EigResult hermitian_eig(const CMat& m, double tol) {
    if (m.rows != m.cols) throw std::invalid_argument("hermitian_eig: matrix not square");
    const std::size_t n = m.rows;

    double max_abs = 0.0, max_dev = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            max_abs = std::max(max_abs, std::abs(m(i, j)));
            max_dev = std::max(max_dev, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    if (max_dev > 1e-10 * std::max(max_abs, 1e-300))
        throw std::invalid_argument("hermitian_eig: matrix is not Hermitian (deviation " +
                                    std::to_string(max_dev) + ")");

    CMat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

    CMat v = CMat::identity(n);
    const double target = tol * fro_norm(a);

    bool converged = offdiag_fro(a) <= target;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cxd b = a(p, q);
                const double ab = std::abs(b);
                if (ab < 1e-300) continue;
                const cxd phase = b / ab;  // a(p,q) = ab * phase
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * ab);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cxd cph = std::conj(phase);

                // A <- A * J with J = [[c, s], [-s*conj(phase), c*conj(phase)]] on (p,q)
                for (std::size_t k = 0; k < n; ++k) {
                    const cxd ap = a(k, p), aq = a(k, q);
                    a(k, p) = c * ap - s * cph * aq;
                    a(k, q) = s * ap + c * cph * aq;
                }
                // A <- J^dagger * A
                for (std::size_t k = 0; k < n; ++k) {
                    const cxd ap = a(p, k), aq = a(q, k);
                    a(p, k) = c * ap - s * phase * aq;
                    a(q, k) = s * ap + c * phase * aq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const cxd vp = v(k, p), vq = v(k, q);
                    v(k, p) = c * vp - s * cph * vq;
                    v(k, q) = s * vp + c * cph * vq;
                }
            }
        }
        converged = offdiag_fro(a) <= target;
    }
    if (!converged)
        throw nonconvergence_error("hermitian_eig: no convergence within 100 sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigResult res;
    res.values.resize(n);
    res.vectors = CMat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        res.values[j] = a(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) res.vectors(i, j) = v(i, order[j]);
    }
    return res;
}

std::vector<double> hermitian_eigenvalues(const CMat& m, double tol) {
    return hermitian_eig(m, tol).values;
}

CMat partial_transpose(const CMat& m, const std::vector<int>& dims, int party) {
    if (m.rows != m.cols) throw std::invalid_argument("partial_transpose: matrix not square");
    std::size_t side = 1;
    for (int d : dims) {
        if (d <= 0) throw std::invalid_argument("partial_transpose: nonpositive dimension");
        side *= static_cast<std::size_t>(d);
    }
    if (side != m.rows)
        throw std::invalid_argument("partial_transpose: side " + std::to_string(m.rows) +
                                    " does not match product of dims " + std::to_string(side));
    if (party < 0 || party >= static_cast<int>(dims.size()))
        throw std::invalid_argument("partial_transpose: party index out of range");

    std::size_t stride = 1;
    for (std::size_t p = dims.size(); p-- > static_cast<std::size_t>(party) + 1;)
        stride *= static_cast<std::size_t>(dims[p]);
    const std::size_t d = static_cast<std::size_t>(dims[static_cast<std::size_t>(party)]);

    CMat out(side, side);
    for (std::size_t row = 0; row < side; ++row) {
        const std::size_t rt = (row / stride) % d;
        for (std::size_t col = 0; col < side; ++col) {
            const std::size_t ct = (col / stride) % d;
            const std::size_t row2 = row + (ct - rt) * stride;
            const std::size_t col2 = col + (rt - ct) * stride;
            out(row2, col2) = m(row, col);
        }
    }
    return out;
}

}  // namespace upb
