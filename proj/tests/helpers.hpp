#pragma once

// Fixtures and utilities shared by the engine, potential, and acceptance
// test binaries.

#include <kcm/engine.hpp>
#include <kcm/identities.hpp>
#include <kcm/model.hpp>
#include <kcm/prng.hpp>
#include <kcm/theta.hpp>

#include <vector>

namespace kcmtest {

using namespace kcm;

// 1/2 (e^1 (x) e^1 + s e^2 (x) e^2) (x) (e^1 (x) e^1 + s e^2 (x) e^2)
// with s = +1 for the complex kind, -1 for the para kind: the two pinned
// product examples.
inline ThetaTensor surface_theta(Kind kind) {
    Structure s = standard_structure(4, kind);
    int sg = (kind == Kind::Complex) ? 1 : -1;
    SymBil form(4);
    form.set(0, 0, Rational(1));
    form.set(1, 1, Rational(sg));
    Tensor4 t(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    Rational v = Rational(1, 2) * form.at(i, j) * form.at(k, l);
                    if (!v.is_zero()) t.at(i, j, k, l) = v;
                }
    return theta_from_tensor(s, std::move(t));
}

inline CurvatureModel surface_model(Kind kind) {
    return model_from_components(standard_structure(4, kind), {{1, 2, 2, 1, Rational(1)}});
}

inline ThetaTensor random_theta(const Structure& s, std::uint64_t seed) {
    Prng rng(seed);
    Tensor4 acc(s.m);
    for (const auto& b : theta_basis(s)) {
        Rational c = rng.rational(4, 3);
        if (!c.is_zero()) acc += c * b.t;
    }
    return ThetaTensor{s, std::move(acc)};
}

// a random theta guaranteed to lie outside ker K (rejection by apply_K)
inline ThetaTensor random_nonkernel_theta(const Structure& s, std::uint64_t seed) {
    for (std::uint64_t bump = 0;; ++bump) {
        ThetaTensor th = random_theta(s, seed + 1000003 * bump);
        if (!apply_K(th).is_zero()) return th;
    }
}

inline bool in_span(const std::vector<ThetaTensor>& basis, const ThetaTensor& th) {
    if (basis.empty()) return th.t.is_zero();
    int n = static_cast<int>(basis[0].t.a.size());
    Mat<Rational> c(n, static_cast<int>(basis.size()));
    for (int b = 0; b < c.cols; ++b)
        for (int r = 0; r < n; ++r) c.at(r, b) = basis[static_cast<std::size_t>(b)].t.a[static_cast<std::size_t>(r)];
    return solve_linear(c, th.t.a).has_value();
}

inline Point random_point(Prng& rng, const PolynomialMetric& g) {
    return random_rational_point(rng, g);
}

} // namespace kcmtest
