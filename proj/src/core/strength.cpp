#include "core/strength.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace upb {

BargmannValue bargmann(std::span<const CVec> vectors, std::span<const int> cycle) {
    if (cycle.size() < 2) throw std::invalid_argument("bargmann: cycle length must be >= 2");
    for (int c : cycle)
        if (c < 0 || c >= static_cast<int>(vectors.size()))
            throw std::invalid_argument("bargmann: cycle index " + std::to_string(c) + " out of range");
    BargmannValue out;
    out.cycle.assign(cycle.begin(), cycle.end());
    out.value = 1.0;
    for (std::size_t t = 0; t < cycle.size(); ++t) {
        const int a = cycle[t];
        const int b = cycle[(t + 1) % cycle.size()];
        out.value *= inner(vectors[static_cast<std::size_t>(a)], vectors[static_cast<std::size_t>(b)]);
    }
    return out;
}

namespace {

StrengthReport strength_impl(const ProductBasisSet& set, const OrthPattern* reference, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("strength_generic: tol must be positive");
    if (reference) {
        if (reference->parties() != set.parties() || reference->n != set.size())
            throw std::invalid_argument("strength_generic: reference pattern shape mismatch (" +
                                        std::to_string(reference->parties()) + "x" +
                                        std::to_string(reference->n) + " vs set " +
                                        std::to_string(set.parties()) + "x" +
                                        std::to_string(set.size()) + ")");
    }
    StrengthReport rep;
    rep.pattern_source = reference ? "reference" : "measured";
    rep.value = 1.0;
    for (int p = 0; p < set.parties(); ++p) {
        double factor = 1.0;
        std::vector<ContributingPair> pairs;
        for (int i = 0; i < set.size(); ++i)
            for (int j = i + 1; j < set.size(); ++j) {
                const double mag =
                    std::abs(inner(set.members[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)],
                                   set.members[static_cast<std::size_t>(j)][static_cast<std::size_t>(p)]));
                if (reference) {
                    if (reference->is_zero(p, i, j)) continue;
                    // Generically nonzero pair: a measured zero contributes 0.
                    const double used = mag > tol ? mag : 0.0;
                    factor *= used;
                    pairs.push_back({i, j, used});
                } else {
                    if (mag <= tol) continue;
                    factor *= mag;
                    pairs.push_back({i, j, mag});
                }
            }
        rep.per_party_factors.push_back(factor);
        rep.contributing_pairs.push_back(std::move(pairs));
        rep.value *= factor;
    }
    return rep;
}

}  // namespace

StrengthReport strength_generic(const ProductBasisSet& set, double tol) {
    return strength_impl(set, nullptr, tol);
}

StrengthReport strength_generic(const ProductBasisSet& set, const OrthPattern& reference, double tol) {
    return strength_impl(set, &reference, tol);
}

OrthPattern product_reference_pattern(const OrthPattern& a, const OrthPattern& b) {
    if (a.parties() != b.parties())
        throw std::invalid_argument("product_reference_pattern: party counts differ");
    const int na = a.n, nb = b.n;
    const int n = na * nb;
    OrthPattern out;
    out.n = n;
    out.tol = std::min(a.tol, b.tol);
    out.zero.assign(static_cast<std::size_t>(a.parties()),
                    std::vector<char>(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 1));
    auto mark_nonzero = [&](int p, int u, int v) {
        out.zero[static_cast<std::size_t>(p)][static_cast<std::size_t>(u) * static_cast<std::size_t>(n) +
                                              static_cast<std::size_t>(v)] = 0;
        out.zero[static_cast<std::size_t>(p)][static_cast<std::size_t>(v) * static_cast<std::size_t>(n) +
                                              static_cast<std::size_t>(u)] = 0;
    };
    for (int p = 0; p < a.parties(); ++p) {
        for (int i = 0; i < n; ++i)  // diagonal is excluded, not zero-classified
            out.zero[static_cast<std::size_t>(p)][static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                                                  static_cast<std::size_t>(i)] = 0;
        for (int i1 = 0; i1 < na; ++i1)
            for (int i2 = i1 + 1; i2 < na; ++i2)
                if (!a.is_zero(p, i1, i2)) mark_nonzero(p, i1 * nb, i2 * nb);
        for (int j1 = 0; j1 < nb; ++j1)
            for (int j2 = j1 + 1; j2 < nb; ++j2)
                if (!b.is_zero(p, j1, j2)) mark_nonzero(p, j1, j2);
    }
    return out;
}

namespace {

double sixparam_party_factor(double theta, double gamma) {
    const double st2 = std::sin(theta) * std::sin(theta);
    const double ct2 = std::cos(theta) * std::cos(theta);
    const double sg2 = std::sin(gamma) * std::sin(gamma);
    const double cg2 = std::cos(gamma) * std::cos(gamma);
    const double den = cg2 + sg2 * ct2;
    if (den <= 1e-15)
        throw std::domain_error("strength_sixparam_closed: vanishing denominator cos^2(gamma) + "
                                "sin^2(gamma) cos^2(theta)");
    return st2 * sg2 * ct2 * cg2 / den;
}

}  // namespace

double strength_sixparam_closed(const SixParam& p) {
    return sixparam_party_factor(p.theta_a, p.gamma_a) * sixparam_party_factor(p.theta_b, p.gamma_b);
}

double strength_tri_f(double x, double y) {
    if (x < -1.0 || x > 1.0 || y < -1.0 || y > 1.0)
        throw std::invalid_argument("strength_tri_f: (x, y) outside [-1,1]^2");
    const double radicand = 4.0 + 4.0 * x * y + x * x;
    if (radicand < 0.0)
        throw std::domain_error("strength_tri_f: negative radicand 4 + 4xy + x^2");
    const double x2 = x * x;
    const double p = x2 * x2 - x2 + 1.0 + 2.0 * x * y * (x2 - 1.0);
    const double q = x2 * x2 * x2 + 4.0 * x2 * x2 - 4.0 * x2 + 1.0 + 2.0 * x2 * x * y * (2.0 * x2 - 1.0);
    const double r = (x2 * x2 - 3.0 * x2 + 1.0) * (x2 * x2 - 3.0 * x2 + 1.0) +
                     2.0 * x2 * (1.0 - x2) * p;
    const double den = r * r;
    if (std::abs(den) <= 1e-15)
        throw std::domain_error("strength_tri_f: vanishing denominator at x = " + std::to_string(x) +
                                ", y = " + std::to_string(y));
    const double num = std::pow(x, 9) * std::pow(1.0 - x2, 6) * std::sqrt(radicand) * p * p * q;
    return std::abs(num / den);
}

double strength_tri_closed(double x, double y) {
    const double f = strength_tri_f(x, y);
    return f * f * f;
}

ClosedVsGeneric compare_closed_vs_generic(const ProductBasisSet& set, double closed_value, double tol) {
    ClosedVsGeneric out;
    out.generic = strength_generic(set, tol).value;
    out.closed = closed_value;
    out.abs_diff = std::abs(out.generic - out.closed);
    const double scale = std::max(std::abs(out.generic), std::abs(out.closed));
    out.rel_diff = scale > 0.0 ? out.abs_diff / scale : 0.0;
    out.ratio = out.closed != 0.0 ? out.generic / out.closed
                                  : (out.generic == 0.0 ? 1.0 : std::numeric_limits<double>::infinity());
    return out;
}

}  // namespace upb
