#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace upb {

using cxd = std::complex<double>;
using CVec = std::vector<cxd>;

// Dense row-major complex matrix. Small sizes only (<= a few hundred rows).
struct CMat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cxd> a;

    CMat() = default;
    CMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    cxd& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const cxd& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static CMat identity(std::size_t n);
};

// Hermitian inner product, conjugate-linear in the FIRST argument.
cxd inner(const CVec& u, const CVec& v);

double norm(const CVec& v);

// v / |v|; throws std::domain_error when |v| <= floor.
CVec normalized(const CVec& v, double floor = 1e-12);

// Kronecker product: entry (i*v.dim + j) = u_i * v_j.
CVec tensor(const CVec& u, const CVec& v);

// G[i][j] = inner(v_i, v_j); Hermitian by construction, real diagonal.
CMat gram(std::span<const CVec> vectors);

// Span dimension: eigenvalues of the Gram matrix above tol * max(lambda_max, 1).
int rank_with_tol(std::span<const CVec> vectors, double tol = 1e-8);

struct EigResult {
    std::vector<double> values;  // ascending
    CMat vectors;                // column j pairs with values[j]
};

// Cyclic two-sided Jacobi rotations on a Hermitian matrix. Converges when the
// off-diagonal Frobenius norm drops below tol * ||M||_F; hard cap 100 sweeps
// (nonconvergence_error beyond that). Input Hermiticity deviation must be
// within 1e-10 * max|M|; the matrix is symmetrized before iterating.
EigResult hermitian_eig(const CMat& m, double tol = 1e-12);
std::vector<double> hermitian_eigenvalues(const CMat& m, double tol = 1e-12);

// Transpose the indices of one party of a multipartite operator.
// Applying twice returns the input bit-exactly (entries are moved, not recomputed).
CMat partial_transpose(const CMat& m, const std::vector<int>& dims, int party);

}  // namespace upb
