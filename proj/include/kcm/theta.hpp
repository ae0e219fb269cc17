#pragma once

// The constructive realization machinery: quadratic metric perturbations
// Theta in S^2_sigma(V*) (x) S^2(V*), the linearized closedness operator
//   (K Theta)(x,y,z)(w) = Theta(x,Jy,z,w) + Theta(y,Jz,x,w) + Theta(z,Jx,y,w),
// the curvature-at-origin map
//   (L Theta)(x,y,z,w) = Theta(x,z,y,w) + Theta(y,w,x,z)
//                      - Theta(x,w,y,z) - Theta(y,z,x,w),
// and the exact solve of L(Theta) = A over ker K that realizes any
// (para-)Kaehler curvature model by a polynomial metric
//   g_ij = g0_ij + Theta(i,j,k,l) u^k u^l.
//
// Slot convention: the first index pair of Theta is the metric pair (the
// S^2_sigma factor), the second is the coordinate pair. The convention is
// not trusted: the test suite pins it against the curvature engine.

#include <kcm/errors.hpp>
#include <kcm/identities.hpp>
#include <kcm/linalg.hpp>
#include <kcm/metric.hpp>
#include <kcm/model.hpp>
#include <kcm/structure.hpp>
#include <kcm/tensor.hpp>
#include <kcm/tv.hpp>

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

namespace kcm {

struct ThetaTensor {
    Structure s;
    Tensor4 t; // first pair metric slots, second pair coordinate slots
};

inline void validate_theta(const Structure& s, const Tensor4& t) {
    if (t.m != s.m) throw BadDimension("theta dimension does not match structure");
    int m = s.m;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    const Rational& v = t.at(i, j, k, l);
                    if (v != t.at(j, i, k, l) || v != t.at(i, j, l, k))
                        throw BadThetaSymmetry("theta is not symmetric in both index pairs");
                    Rational pulled = t.at(s.jp(i), s.jp(j), k, l);
                    if (s.js(i) * s.js(j) < 0) pulled = -pulled;
                    Rational want = v;
                    if (s.sigma < 0) want = -want;
                    if (pulled != want)
                        throw BadThetaSymmetry("theta does not satisfy theta(Jx,Jy,.,.) = sigma theta(x,y,.,.)");
                }
}

inline ThetaTensor theta_from_tensor(const Structure& s, Tensor4 t) {
    validate_theta(s, t);
    return ThetaTensor{s, std::move(t)};
}

// Product basis: (sigma-compatible symmetric forms) x (symmetric pairs of
// coordinate directions). Dimension mbar^2 * m(m+1)/2 for both kinds.
inline std::vector<ThetaTensor> theta_basis(const Structure& s) {
    int m = s.m;
    std::vector<ThetaTensor> out;
    for (const auto& th : s2_sigma_basis(s)) {
        for (int k = 0; k < m; ++k)
            for (int l = k; l < m; ++l) {
                Tensor4 t(m);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) {
                        const Rational& v = th.at(i, j);
                        if (v.is_zero()) continue;
                        t.at(i, j, k, l) = v;
                        if (l != k) t.at(i, j, l, k) = v;
                    }
                out.push_back(ThetaTensor{s, std::move(t)});
            }
    }
    return out;
}

// (K Theta)(x,y,z)(w): fully antisymmetric in (x,y,z) for valid Theta.
// The result is the linearization of the Kaehler-form differential: the
// polynomial d Omega of g_Theta has coefficients 2 u^l K(a,b,c)(l).
inline Tensor4 apply_K(const ThetaTensor& th) {
    const Structure& s = th.s;
    const Tensor4& t = th.t;
    int m = s.m;
    auto tj = [&](int a, int b, int c, int w) { // Theta(a, Jb, c, w)
        const Rational& v = t.at(a, s.jp(b), c, w);
        return s.js(b) > 0 ? v : -v;
    };
    Tensor4 out(m);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            for (int z = 0; z < m; ++z)
                for (int w = 0; w < m; ++w) {
                    Rational v = tj(x, y, z, w) + tj(y, z, x, w) + tj(z, x, y, w);
                    if (!v.is_zero()) out.at(x, y, z, w) = v;
                }
    return out;
}

// curvature of g_Theta at the origin, as a bilinear expression in Theta
inline Tensor4 origin_curvature(const ThetaTensor& th) {
    const Tensor4& t = th.t;
    int m = t.m;
    Tensor4 out(m);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            for (int z = 0; z < m; ++z)
                for (int w = 0; w < m; ++w) {
                    Rational v = t.at(x, z, y, w) + t.at(y, w, x, z) - t.at(x, w, y, z) - t.at(y, z, x, w);
                    if (!v.is_zero()) out.at(x, y, z, w) = v;
                }
    return out;
}

namespace detail {

struct KernelData {
    std::vector<ThetaTensor> basis; // basis of ker K
};

inline const KernelData& kernel_data(const Structure& s) {
    static std::mutex mu;
    static std::map<std::pair<int, Kind>, std::shared_ptr<const KernelData>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({s.m, s.kind});
        if (it != cache.end()) return *it->second;
    }
    int m = s.m;
    auto tb = theta_basis(s);
    std::vector<Tensor4> kimg;
    kimg.reserve(tb.size());
    for (const auto& th : tb) kimg.push_back(apply_K(th));
    // K output is alternating in (x,y,z): rows x<y<z and free w suffice
    std::vector<std::array<int, 4>> rows;
    for (int x = 0; x < m; ++x)
        for (int y = x + 1; y < m; ++y)
            for (int z = y + 1; z < m; ++z)
                for (int w = 0; w < m; ++w) rows.push_back({x, y, z, w});
    Mat<Rational> c(static_cast<int>(rows.size()), static_cast<int>(tb.size()));
    for (int r = 0; r < c.rows; ++r) {
        auto [x, y, z, w] = rows[static_cast<std::size_t>(r)];
        for (int b = 0; b < c.cols; ++b) c.at(r, b) = kimg[static_cast<std::size_t>(b)].at(x, y, z, w);
    }
    auto data = std::make_shared<KernelData>();
    for (const auto& v : nullspace(c)) {
        Tensor4 acc(m);
        for (std::size_t b = 0; b < tb.size(); ++b)
            if (!v[b].is_zero()) acc += v[b] * tb[b].t;
        data->basis.push_back(ThetaTensor{s, std::move(acc)});
    }
    std::lock_guard<std::mutex> lock(mu);
    cache[{s.m, s.kind}] = data;
    return *cache[{s.m, s.kind}];
}

} // namespace detail

// Exact basis of ker(apply_K) within the Theta space. Every element
// produces a metric whose Kaehler form is closed to the order that matters
// (and, J being constant, genuinely Kaehler).
inline std::vector<ThetaTensor> closed_theta_basis(const Structure& s) {
    return detail::kernel_data(s).basis;
}

// Realizes a (para-)Kaehler curvature model: finds Theta in ker K with
// origin_curvature(Theta) = A by one exact linear solve over the kernel
// basis. Free coordinates are zeroed, so the result is deterministic.
inline ThetaTensor realize(const CurvatureModel& mod) {
    const Structure& s = mod.s;
    if (!check_kaehler(mod).holds)
        throw NotKaehler("only models satisfying the Kaehler identity are realizable by this construction");
    const auto& kb = detail::kernel_data(s).basis;
    auto reps = curvature_reps(s.m);
    Mat<Rational> c(static_cast<int>(reps.size()), static_cast<int>(kb.size()));
    for (int b = 0; b < c.cols; ++b) {
        auto red = to_reduced(origin_curvature(kb[static_cast<std::size_t>(b)]));
        for (int r = 0; r < c.rows; ++r) c.at(r, b) = red[static_cast<std::size_t>(r)];
    }
    auto rhs = to_reduced(mod.a);
    auto x = solve_linear(c, rhs);
    if (!x)
        throw InternalInvariantViolation(
            "curvature-at-origin map failed to cover a Kaehler model; convention violation");
    Tensor4 acc(s.m);
    for (std::size_t b = 0; b < kb.size(); ++b)
        if (!(*x)[b].is_zero()) acc += (*x)[b] * kb[b].t;
    return ThetaTensor{s, std::move(acc)};
}

// g_ij = g0_ij + Theta(i,j,k,l) u^k u^l
inline PolynomialMetric metric_from_theta(const ThetaTensor& th) {
    const Structure& s = th.s;
    int m = s.m;
    PolynomialMetric g = flat_metric(s);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Poly q(m);
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    const Rational& v = th.t.at(i, j, k, l);
                    if (v.is_zero()) continue;
                    std::vector<int> e(static_cast<std::size_t>(m));
                    ++e[static_cast<std::size_t>(k)];
                    ++e[static_cast<std::size_t>(l)];
                    q.add_term(e, v);
                }
            g.at(i, j) += q;
        }
    return g;
}

} // namespace kcm
