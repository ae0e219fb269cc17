#pragma once

// Exact Riemannian machinery for polynomial metrics: Christoffel symbols,
// the full (0,4) curvature tensor, scalar curvature, and the differential
// of the Kaehler form, all evaluated at rational points with no floating
// arithmetic anywhere.
//
// Sign conventions (pinned, and enforced against the algebraic side by the
// test suite): R(x,y)z = nabla_x nabla_y z - nabla_y nabla_x z - nabla_[x,y] z,
// R(x,y,z,w) = g(R(x,y)z, w), tau = g^{ik} g^{jl} R(d_i,d_j,d_l,d_k). Under
// these, curvature_at(metric_from_theta(Th), 0) equals origin_curvature(Th)
// identically.
//
// The computational kernels are templated over the scalar field so tests
// can run them over univariate rational functions and compare Taylor
// expansions; the library itself uses them over Rational.

#include <kcm/errors.hpp>
#include <kcm/linalg.hpp>
#include <kcm/metric.hpp>
#include <kcm/polynomial.hpp>
#include <kcm/prng.hpp>
#include <kcm/structure.hpp>
#include <kcm/tensor.hpp>

#include <vector>

namespace kcm {

using Point = std::vector<Rational>;

struct Christoffels {
    int m = 0;
    std::vector<Rational> a; // Gamma^l_{jk}, symmetric in (j,k)

    Christoffels() = default;
    explicit Christoffels(int mm) : m(mm), a(static_cast<std::size_t>(mm) * mm * mm) {}
    Rational& at(int l, int j, int k) { return a[(static_cast<std::size_t>(l) * m + j) * m + k]; }
    const Rational& at(int l, int j, int k) const { return a[(static_cast<std::size_t>(l) * m + j) * m + k]; }
};

struct Rank3 {
    int m = 0;
    std::vector<Rational> a;

    Rank3() = default;
    explicit Rank3(int mm) : m(mm), a(static_cast<std::size_t>(mm) * mm * mm) {}
    Rational& at(int i, int j, int k) { return a[(static_cast<std::size_t>(i) * m + j) * m + k]; }
    const Rational& at(int i, int j, int k) const { return a[(static_cast<std::size_t>(i) * m + j) * m + k]; }
    bool is_zero() const {
        for (const auto& x : a)
            if (!x.is_zero()) return false;
        return true;
    }
};

namespace detail {

// metric value, first and (optionally) second derivatives at a point
template <class T>
struct MetricJet {
    Mat<T> g;
    Mat<T> ginv;
    std::vector<Mat<T>> dg;               // dg[k](i,j) = d_k g_ij
    std::vector<std::vector<Mat<T>>> d2g; // d2g[k][l](i,j) = d_k d_l g_ij
};

template <class T>
MetricJet<T> metric_jet(const PolynomialMetric& gm, const std::vector<T>& p, bool second) {
    int m = gm.s.m;
    MetricJet<T> jet;
    jet.g = Mat<T>(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) jet.g.at(i, j) = gm.at(i, j).template eval<T>(p);
    auto inv = invert(jet.g);
    if (!inv) throw SingularMetric("metric is singular at the evaluation point");
    jet.ginv = std::move(*inv);
    jet.dg.assign(static_cast<std::size_t>(m), Mat<T>(m, m));
    std::vector<Poly> dpoly(static_cast<std::size_t>(m) * m * m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                Poly d = gm.at(i, j).derivative(k);
                T v = d.template eval<T>(p);
                jet.dg[static_cast<std::size_t>(k)].at(i, j) = v;
                jet.dg[static_cast<std::size_t>(k)].at(j, i) = v;
                dpoly[(static_cast<std::size_t>(i) * m + j) * m + k] = std::move(d);
            }
    if (second) {
        jet.d2g.assign(static_cast<std::size_t>(m), std::vector<Mat<T>>(static_cast<std::size_t>(m), Mat<T>(m, m)));
        for (int i = 0; i < m; ++i)
            for (int j = i; j < m; ++j)
                for (int k = 0; k < m; ++k)
                    for (int l = k; l < m; ++l) {
                        T v = dpoly[(static_cast<std::size_t>(i) * m + j) * m + k]
                                  .derivative(l)
                                  .template eval<T>(p);
                        jet.d2g[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)].at(i, j) = v;
                        jet.d2g[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)].at(j, i) = v;
                        jet.d2g[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)].at(i, j) = v;
                        jet.d2g[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)].at(j, i) = v;
                    }
    }
    return jet;
}

// Gamma^l_{jk} = 1/2 g^{lq} (d_j g_kq + d_k g_jq - d_q g_jk)
template <class T>
std::vector<T> christoffel_entries(const MetricJet<T>& jet, int m) {
    std::vector<T> gamma(static_cast<std::size_t>(m) * m * m, T(Rational(0)));
    const Rational half(1, 2);
    for (int l = 0; l < m; ++l)
        for (int j = 0; j < m; ++j)
            for (int k = j; k < m; ++k) {
                T acc = T(Rational(0));
                for (int q = 0; q < m; ++q) {
                    T sum = jet.dg[static_cast<std::size_t>(j)].at(k, q) +
                            jet.dg[static_cast<std::size_t>(k)].at(j, q) -
                            jet.dg[static_cast<std::size_t>(q)].at(j, k);
                    acc = acc + jet.ginv.at(l, q) * sum;
                }
                acc = T(half) * acc;
                gamma[(static_cast<std::size_t>(l) * m + j) * m + k] = acc;
                gamma[(static_cast<std::size_t>(l) * m + k) * m + j] = acc;
            }
    return gamma;
}

// R_{ijkw} = g(R(d_i,d_j)d_k, d_w) with
// R^l_{ijk} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
//           + Gamma^a_{jk} Gamma^l_{ia} - Gamma^a_{ik} Gamma^l_{ja}
template <class T>
std::vector<T> curvature_entries(const MetricJet<T>& jet, int m) {
    auto gamma = christoffel_entries(jet, m);
    auto gam = [&](int l, int j, int k) -> const T& {
        return gamma[(static_cast<std::size_t>(l) * m + j) * m + k];
    };
    // d_i of the inverse metric: -ginv dg_i ginv
    std::vector<Mat<T>> dginv;
    dginv.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        Mat<T> t = jet.ginv * (jet.dg[static_cast<std::size_t>(i)] * jet.ginv);
        for (auto& v : t.a) v = T(Rational(0)) - v;
        dginv.push_back(std::move(t));
    }
    const Rational half(1, 2);
    // d_i Gamma^l_{jk}
    std::vector<T> dgamma(static_cast<std::size_t>(m) * m * m * m, T(Rational(0)));
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < m; ++l)
            for (int j = 0; j < m; ++j)
                for (int k = j; k < m; ++k) {
                    T acc = T(Rational(0));
                    for (int q = 0; q < m; ++q) {
                        T sum = jet.dg[static_cast<std::size_t>(j)].at(k, q) +
                                jet.dg[static_cast<std::size_t>(k)].at(j, q) -
                                jet.dg[static_cast<std::size_t>(q)].at(j, k);
                        T dsum = jet.d2g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].at(k, q) +
                                 jet.d2g[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].at(j, q) -
                                 jet.d2g[static_cast<std::size_t>(i)][static_cast<std::size_t>(q)].at(j, k);
                        acc = acc + dginv[static_cast<std::size_t>(i)].at(l, q) * sum + jet.ginv.at(l, q) * dsum;
                    }
                    acc = T(half) * acc;
                    dgamma[((static_cast<std::size_t>(i) * m + l) * m + j) * m + k] = acc;
                    dgamma[((static_cast<std::size_t>(i) * m + l) * m + k) * m + j] = acc;
                }
    auto dgam = [&](int i, int l, int j, int k) -> const T& {
        return dgamma[((static_cast<std::size_t>(i) * m + l) * m + j) * m + k];
    };
    std::vector<T> up(static_cast<std::size_t>(m) * m * m * m, T(Rational(0)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    T acc = dgam(i, l, j, k) - dgam(j, l, i, k);
                    for (int a = 0; a < m; ++a)
                        acc = acc + gam(a, j, k) * gam(l, i, a) - gam(a, i, k) * gam(l, j, a);
                    up[((static_cast<std::size_t>(i) * m + j) * m + k) * m + l] = acc;
                }
    std::vector<T> low(static_cast<std::size_t>(m) * m * m * m, T(Rational(0)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int w = 0; w < m; ++w) {
                    T acc = T(Rational(0));
                    for (int l = 0; l < m; ++l)
                        acc = acc + jet.g.at(l, w) * up[((static_cast<std::size_t>(i) * m + j) * m + k) * m + l];
                    low[((static_cast<std::size_t>(i) * m + j) * m + k) * m + w] = acc;
                }
    return low;
}

template <class T>
T scalar_from_curvature(const MetricJet<T>& jet, const std::vector<T>& low, int m) {
    T acc = T(Rational(0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    const T& r = low[((static_cast<std::size_t>(i) * m + j) * m + k) * m + l];
                    acc = acc + jet.ginv.at(i, l) * jet.ginv.at(j, k) * r;
                }
    return acc;
}

} // namespace detail

// Templated entry points (used by tests over other exact scalar fields).
template <class T>
std::vector<T> curvature_entries_at(const PolynomialMetric& g, const std::vector<T>& p) {
    auto jet = detail::metric_jet<T>(g, p, true);
    return detail::curvature_entries(jet, g.s.m);
}

template <class T>
T scalar_curvature_value_at(const PolynomialMetric& g, const std::vector<T>& p) {
    auto jet = detail::metric_jet<T>(g, p, true);
    auto low = detail::curvature_entries(jet, g.s.m);
    return detail::scalar_from_curvature(jet, low, g.s.m);
}

inline Christoffels christoffels_at(const PolynomialMetric& g, const Point& p) {
    auto jet = detail::metric_jet<Rational>(g, p, false);
    Christoffels out(g.s.m);
    out.a = detail::christoffel_entries(jet, g.s.m);
    return out;
}

inline Tensor4 curvature_at(const PolynomialMetric& g, const Point& p) {
    Tensor4 out(g.s.m);
    out.a = curvature_entries_at<Rational>(g, p);
    return out;
}

inline Rational scalar_curvature_at(const PolynomialMetric& g, const Point& p) {
    return scalar_curvature_value_at<Rational>(g, p);
}

// (d Omega)_{abc} = d_a Omega_bc - d_b Omega_ac + d_c Omega_ab with
// Omega(x,y) = g(x, Jy) and the structure's constant J.
inline Rank3 kaehler_form_d_at(const PolynomialMetric& g, const Point& p) {
    const Structure& s = g.s;
    int m = s.m;
    // dOm[a](b,c) = d_a Omega_bc = js(c) d_a g_{b, jp(c)}
    std::vector<Mat<Rational>> dom(static_cast<std::size_t>(m), Mat<Rational>(m, m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c) {
                Rational v = g.at(b, s.jp(c)).derivative(a).eval_rational(p);
                dom[static_cast<std::size_t>(a)].at(b, c) = (s.js(c) > 0) ? v : -v;
            }
    Rank3 out(m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                out.at(a, b, c) = dom[static_cast<std::size_t>(a)].at(b, c) -
                                  dom[static_cast<std::size_t>(b)].at(a, c) +
                                  dom[static_cast<std::size_t>(c)].at(a, b);
    return out;
}

// Random rational point with small coordinates n/d, n in [-2,2], d in
// [4,8]. Nondegeneracy of the metric there is verified by attempting the
// inversion, never assumed; degenerate draws are redrawn deterministically.
inline Point random_rational_point(Prng& rng, const PolynomialMetric& g) {
    for (;;) {
        Point p;
        p.reserve(static_cast<std::size_t>(g.s.m));
        for (int i = 0; i < g.s.m; ++i)
            p.push_back(Rational(rng.int_in(-2, 2), rng.int_in(4, 8)));
        try {
            (void)detail::metric_jet<Rational>(g, p, false);
            return p;
        } catch (const SingularMetric&) {
            continue;
        }
    }
}

// The same 3-form as polynomials in u: dOmega identically zero as a
// 1-parameter family iff every returned entry is the zero polynomial.
// Flattened (a,b,c) row-major, m^3 entries.
inline std::vector<Poly> domega_polynomials(const PolynomialMetric& g) {
    const Structure& s = g.s;
    int m = s.m;
    auto om = [&](int b, int c) {
        Poly v = g.at(b, s.jp(c));
        return (s.js(c) > 0) ? v : Rational(-1) * v;
    };
    std::vector<Poly> out(static_cast<std::size_t>(m) * m * m, Poly(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                out[(static_cast<std::size_t>(a) * m + b) * m + c] =
                    om(b, c).derivative(a) - om(a, c).derivative(b) + om(a, b).derivative(c);
    return out;
}

} // namespace kcm
