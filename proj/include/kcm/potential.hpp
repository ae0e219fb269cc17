#pragma once

// Constant scalar curvature by potential correction. A scalar potential
// phi perturbs a metric through the Hessian-symmetrization
//
//   kappa_phi(d_a, d_b) = 1/4 (H_ab + s' js(a) js(b) H_{J(a), J(b)}),
//
// with H the Hessian of phi and s' = +1 (complex) / -1 (para). kappa_phi
// is compatible with the structure (it keeps the metric (para-)Hermitian
// and contributes nothing to d Omega), so correcting a realized metric by
// kappa_phi preserves everything but the scalar curvature. solve_csc runs
// a Cauchy-Kovalevskaya-style recursion on the jet of phi, with zero
// Cauchy data in the distinguished last coordinate, until the scalar
// curvature equals the requested constant through the requested order.

#include <kcm/engine.hpp>
#include <kcm/errors.hpp>
#include <kcm/metric.hpp>
#include <kcm/polynomial.hpp>
#include <kcm/series.hpp>
#include <kcm/structure.hpp>
#include <kcm/theta.hpp>

#include <vector>

namespace kcm {

// dense m x m matrix of polynomials, symmetric, structure-compatible
inline std::vector<Poly> kappa(const Structure& s, const Poly& phi) {
    int m = s.m;
    if (phi.nvars() != m) throw BadDimension("potential variable count does not match structure");
    std::vector<Poly> hess(static_cast<std::size_t>(m) * m);
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
            Poly h = phi.derivative(a).derivative(b);
            hess[static_cast<std::size_t>(a) * m + b] = h;
            hess[static_cast<std::size_t>(b) * m + a] = h;
        }
    int sp = (s.kind == Kind::Complex) ? 1 : -1;
    std::vector<Poly> out(static_cast<std::size_t>(m) * m);
    const Rational quarter(1, 4);
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
            Poly mixed = hess[static_cast<std::size_t>(s.jp(a)) * m + s.jp(b)];
            int sg = sp * s.js(a) * s.js(b);
            Poly v = (sg > 0) ? (hess[static_cast<std::size_t>(a) * m + b] + mixed)
                              : (hess[static_cast<std::size_t>(a) * m + b] - mixed);
            v = quarter * v;
            out[static_cast<std::size_t>(a) * m + b] = v;
            out[static_cast<std::size_t>(b) * m + a] = v;
        }
    return out;
}

inline PolynomialMetric perturbed_metric(PolynomialMetric g, const std::vector<Poly>& kap) {
    for (std::size_t i = 0; i < g.entries.size(); ++i) g.entries[i] += kap[i];
    return g;
}

// Scalar curvature of a polynomial metric as a truncated series around the
// origin, exact through total degree `cap`. The inverse metric is expanded
// one order further than requested so every retained coefficient of the
// curvature is exact.
inline TruncSeries scalar_curvature_series(const PolynomialMetric& g, int cap) {
    int m = g.s.m;
    int work = cap + 1;
    Mat<TruncSeries> gs(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) gs.at(i, j) = TruncSeries::from_poly(g.at(i, j));
    Mat<TruncSeries> ginv = series_matrix_inverse(gs, m, work);

    auto dg = [&](int k, int i, int j) { return gs.at(i, j).derivative(k); };
    std::vector<TruncSeries> gamma(static_cast<std::size_t>(m) * m * m);
    for (int l = 0; l < m; ++l)
        for (int j = 0; j < m; ++j)
            for (int k = j; k < m; ++k) {
                TruncSeries acc(m, work);
                for (int q = 0; q < m; ++q)
                    acc += ginv.at(l, q) * (dg(j, k, q) + dg(k, j, q) - dg(q, j, k));
                acc = Rational(1, 2) * acc;
                gamma[(static_cast<std::size_t>(l) * m + j) * m + k] = acc;
                gamma[(static_cast<std::size_t>(l) * m + k) * m + j] = acc;
            }
    auto gam = [&](int l, int j, int k) -> const TruncSeries& {
        return gamma[(static_cast<std::size_t>(l) * m + j) * m + k];
    };

    // R^a_{ijl} = d_i Gamma^a_{jl} - d_j Gamma^a_{il}
    //           + Gamma^b_{jl} Gamma^a_{ib} - Gamma^b_{il} Gamma^a_{jb},
    // antisymmetric in (i,j), so only i < j is computed
    auto pos4 = [m](int a, int i, int j, int l) {
        return ((static_cast<std::size_t>(a) * m + i) * m + j) * m + l;
    };
    std::vector<TruncSeries> rup(static_cast<std::size_t>(m) * m * m * m, TruncSeries(m, work - 1));
    for (int a = 0; a < m; ++a)
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                for (int l = 0; l < m; ++l) {
                    TruncSeries up = gam(a, j, l).derivative(i) - gam(a, i, l).derivative(j);
                    for (int b = 0; b < m; ++b)
                        up += gam(b, j, l) * gam(a, i, b) - gam(b, i, l) * gam(a, j, b);
                    rup[pos4(a, j, i, l)] = -up;
                    rup[pos4(a, i, j, l)] = std::move(up);
                }

    // lower the first slot: R_{ijlk} = g_{ak} R^a_{ijl}
    std::vector<TruncSeries> rlow(static_cast<std::size_t>(m) * m * m * m, TruncSeries(m, work - 1));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            for (int l = 0; l < m; ++l)
                for (int k = 0; k < m; ++k) {
                    TruncSeries acc(m, work - 1);
                    for (int a = 0; a < m; ++a) acc += gs.at(a, k) * rup[pos4(a, i, j, l)];
                    rlow[pos4(i, j, l, k)] = std::move(acc);
                }
        }

    // tau = g^{ik} g^{jl} R(d_i, d_j, d_l, d_k)
    TruncSeries tau(m, cap);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    tau += (ginv.at(i, k) * ginv.at(j, l) * rlow[pos4(i, j, l, k)]).truncated(cap);
        }
    return tau;
}

struct Potential {
    Structure s;
    Poly phi;                      // jet of the potential, zero Cauchy data in u_m
    Rational c;                    // target constant scalar curvature
    int degree = 0;                // jet order N the recursion solved through
    int residual_zero_through = 0; // independently re-verified vanishing order of tau - c
};

// Cauchy-Kovalevskaya recursion for tau(g_Theta + kappa_phi) = c. Theta
// must realize a Kaehler model (ker K); N is the jet order of phi. The
// Cauchy data of phi in the last coordinate (u_m-powers 0..3) is zero, so
// the solved jet is the unique one with that normalization.
inline Potential solve_csc(const ThetaTensor& th, const Rational& c, int N) {
    const Structure& s = th.s;
    int m = s.m;
    validate_theta(s, th.t);
    if (!apply_K(th).is_zero())
        throw NotInKernel("theta does not produce a closed Kaehler form; realize a Kaehler model first");
    if (N < 5) throw BadDimension("jet order must be at least 5");

    PolynomialMetric base = metric_from_theta(th);

    // Probe the leading coefficient of the recursion instead of assuming
    // it: the u_m^4 unit potential shifts the constant term of tau by
    // 4! * lead, where lead multiplies k(k-1)(k-2)(k-3) on the diagonal.
    std::vector<int> quart(static_cast<std::size_t>(m), 0);
    quart[static_cast<std::size_t>(m) - 1] = 4;
    Poly probe(m);
    probe.add_term(quart, Rational(1));
    std::vector<int> zero(static_cast<std::size_t>(m), 0);
    Rational tau0 = scalar_curvature_series(base, 0).coefficient(zero);
    Rational shifted = scalar_curvature_series(perturbed_metric(base, kappa(s, probe)), 0).coefficient(zero);
    Rational lead = (shifted - tau0) / Rational(24);
    if (lead.is_zero())
        throw LeadingCoefficientDegenerate("u_m^4 probe does not move the scalar curvature");

    Poly phi(m);
    for (int d = 4; d <= N; ++d) {
        for (int k = 4; k <= d; ++k) {
            // residual so far, exact through the degree this step corrects
            TruncSeries res = scalar_curvature_series(perturbed_metric(base, kappa(s, phi)), d - 4);
            res -= TruncSeries::constant(m, c, d - 4);
            Rational lam = lead * Rational(k) * Rational(k - 1) * Rational(k - 2) * Rational(k - 3);
            // one new phi coefficient per transverse monomial y^alpha,
            // |alpha| = d - k, addressing the residual slot (alpha, k - 4)
            std::vector<int> e(static_cast<std::size_t>(m), 0);
            std::vector<int> alpha(static_cast<std::size_t>(m) - 1, 0);
            for (;;) {
                int deg = 0;
                for (int x : alpha) deg += x;
                if (deg == d - k) {
                    for (int i = 0; i + 1 < m; ++i) e[static_cast<std::size_t>(i)] = alpha[static_cast<std::size_t>(i)];
                    e[static_cast<std::size_t>(m) - 1] = k - 4;
                    Rational r = res.coefficient(e);
                    if (!r.is_zero()) {
                        e[static_cast<std::size_t>(m) - 1] = k;
                        phi.add_term(e, -(r / lam));
                    }
                }
                // next exponent vector over the transverse variables,
                // odometer order bounded by d - k in each slot
                std::size_t pos = 0;
                while (pos < alpha.size()) {
                    if (alpha[pos] < d - k) {
                        ++alpha[pos];
                        break;
                    }
                    alpha[pos] = 0;
                    ++pos;
                }
                if (pos == alpha.size()) break;
            }
        }
    }

    // independent re-verification of the final jet
    int through = N - 4;
    TruncSeries res = scalar_curvature_series(perturbed_metric(base, kappa(s, phi)), through);
    res -= TruncSeries::constant(m, c, through);
    if (!res.is_zero())
        throw InternalInvariantViolation("scalar curvature residual did not vanish through the solved order");

    Potential out{s, std::move(phi), c, N, through};
    return out;
}

} // namespace kcm
