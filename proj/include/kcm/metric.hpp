#pragma once

// Polynomial metrics g_ij(u) on a coordinate ball around the origin:
// a symmetric matrix of multivariate polynomials whose value at 0 is the
// structure's flat metric g0.

#include <kcm/errors.hpp>
#include <kcm/polynomial.hpp>
#include <kcm/structure.hpp>

#include <vector>

namespace kcm {

struct PolynomialMetric {
    Structure s;
    std::vector<Poly> entries; // dense m*m, symmetric

    PolynomialMetric() = default;
    explicit PolynomialMetric(const Structure& st)
        : s(st), entries(static_cast<std::size_t>(st.m) * st.m, Poly(st.m)) {}

    Poly& at(int i, int j) { return entries[static_cast<std::size_t>(i) * s.m + j]; }
    const Poly& at(int i, int j) const { return entries[static_cast<std::size_t>(i) * s.m + j]; }
};

inline PolynomialMetric flat_metric(const Structure& s) {
    PolynomialMetric g(s);
    for (int i = 0; i < s.m; ++i) g.at(i, i) = Poly::constant(s.m, Rational(s.eps(i)));
    return g;
}

// sanity: symmetric entries and g(0) = g0
inline void validate_metric(const PolynomialMetric& g) {
    int m = g.s.m;
    std::vector<Rational> origin(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (!(g.at(i, j) == g.at(j, i)))
                throw SymmetryConflict("metric entries are not symmetric");
            Rational v0 = g.at(i, j).eval_rational(origin);
            Rational want = (i == j) ? Rational(g.s.eps(i)) : Rational(0);
            if (v0 != want) throw ParseError("metric value at the origin is not g0");
        }
}

} // namespace kcm
