#pragma once

// Curvature identity checkers, contractions, the Nijenhuis tensor from a
// 1-jet, and exact bases/projections of the (para-)Kaehler tensor space.
//
// Gray identity (mixed-term sign is -sigma: minus for complex, plus for para):
//   0 = A(x,y,z,w) + A(Jx,Jy,Jz,Jw)
//       - sigma * [ A(Jx,Jy,z,w) + A(Jx,y,Jz,w) + A(Jx,y,z,Jw)
//                 + A(x,Jy,Jz,w) + A(x,Jy,z,Jw) + A(x,y,Jz,Jw) ]
// Kaehler identity: A(x,y,z,w) = sigma * A(Jx,Jy,z,w).
//
// Checkers scan all m^4 basis quadruples in lexicographic order and report
// the first offending quadruple, so reports are deterministic.

#include <kcm/errors.hpp>
#include <kcm/linalg.hpp>
#include <kcm/model.hpp>
#include <kcm/prng.hpp>
#include <kcm/structure.hpp>
#include <kcm/tensor.hpp>

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace kcm {

struct IdentityReport {
    std::string identity;
    bool holds = true;
    std::array<int, 4> at{};  // 0-based witness quadruple when holds == false
    Rational value;           // the nonzero defect at that quadruple
};

namespace detail {

// value of A with J applied to the slots selected by mask (bit t = slot t)
inline Rational jmasked(const Tensor4& a, const Structure& s, int x, int y, int z, int w, unsigned mask) {
    int q[4] = {x, y, z, w};
    int sg = 1;
    for (int t = 0; t < 4; ++t)
        if (mask & (1u << t)) {
            sg *= s.js(q[t]);
            q[t] = s.jp(q[t]);
        }
    const Rational& v = a.at(q[0], q[1], q[2], q[3]);
    return (sg > 0) ? v : -v;
}

} // namespace detail

inline Rational gray_defect(const CurvatureModel& mod, int x, int y, int z, int w) {
    const Structure& s = mod.s;
    const Tensor4& a = mod.a;
    Rational sum = a.at(x, y, z, w) + detail::jmasked(a, s, x, y, z, w, 0b1111u);
    Rational mixed;
    for (unsigned mask : {0b0011u, 0b0101u, 0b1001u, 0b0110u, 0b1010u, 0b1100u})
        mixed += detail::jmasked(a, s, x, y, z, w, mask);
    if (s.sigma > 0) sum -= mixed;
    else sum += mixed;
    return sum;
}

inline Rational kaehler_defect(const CurvatureModel& mod, int x, int y, int z, int w) {
    Rational rhs = detail::jmasked(mod.a, mod.s, x, y, z, w, 0b0011u);
    if (mod.s.sigma < 0) rhs = -rhs;
    return mod.a.at(x, y, z, w) - rhs;
}

namespace detail {

template <class Defect>
IdentityReport scan_identity(const CurvatureModel& mod, const std::string& name, Defect&& defect) {
    IdentityReport rep;
    rep.identity = name;
    int m = mod.s.m;
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            for (int z = 0; z < m; ++z)
                for (int w = 0; w < m; ++w) {
                    Rational d = defect(x, y, z, w);
                    if (!d.is_zero()) {
                        rep.holds = false;
                        rep.at = {x, y, z, w};
                        rep.value = d;
                        return rep;
                    }
                }
    return rep;
}

} // namespace detail

inline IdentityReport check_gray(const CurvatureModel& mod) {
    return detail::scan_identity(mod, "gray", [&](int x, int y, int z, int w) {
        return gray_defect(mod, x, y, z, w);
    });
}

inline IdentityReport check_kaehler(const CurvatureModel& mod) {
    return detail::scan_identity(mod, "kaehler", [&](int x, int y, int z, int w) {
        return kaehler_defect(mod, x, y, z, w);
    });
}

struct ContractionReport {
    SymBil rho;                // rho(x,y) = sum_i eps_i A(x,e_i,e_i,y)
    Mat<Rational> rho_star;    // rho*(x,y) = sum_i eps_i A(x,e_i,J e_i,J y)
    Rational tau;              // eps-weighted trace of rho
    Rational tau_star;         // eps-weighted trace of rho*
};

inline ContractionReport contractions(const CurvatureModel& mod) {
    const Structure& s = mod.s;
    const Tensor4& a = mod.a;
    int m = s.m;
    ContractionReport rep;
    rep.rho = SymBil(m);
    rep.rho_star = Mat<Rational>(m, m);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            Rational r, rs;
            for (int i = 0; i < m; ++i) {
                Rational t = a.at(x, i, i, y);
                Rational ts = a.at(x, i, s.jp(i), s.jp(y));
                int sg = s.eps(i);
                int sgs = s.eps(i) * s.js(i) * s.js(y);
                if (!t.is_zero()) r += (sg > 0) ? t : -t;
                if (!ts.is_zero()) rs += (sgs > 0) ? ts : -ts;
            }
            rep.rho.at(x, y) = r;
            rep.rho_star.at(x, y) = rs;
        }
    for (int i = 0; i < m; ++i) {
        if (s.eps(i) > 0) {
            rep.tau += rep.rho.at(i, i);
            rep.tau_star += rep.rho_star.at(i, i);
        } else {
            rep.tau -= rep.rho.at(i, i);
            rep.tau_star -= rep.rho_star.at(i, i);
        }
    }
    return rep;
}

// Nijenhuis tensor of an almost (para-)complex structure from its 1-jet at
// a point, evaluated on the coordinate fields (d_i, d_j). dJ[k](a,b) is
// the k-th partial of the matrix entry J^a_b. Uses [f d_a, d_b] = -(d_b f) d_a.
//   complex: N(x,y) = [x,y] + J[Jx,y] + J[x,Jy] - [Jx,Jy]
//   para:    N(x,y) = [x,y] - J[Jx,y] - J[x,Jy] + [Jx,Jy]
inline std::vector<Rational> nijenhuis_at(const Mat<Rational>& j0,
                                          const std::vector<Mat<Rational>>& dj,
                                          Kind kind, int i, int j) {
    int m = j0.rows;
    std::vector<Rational> n(static_cast<std::size_t>(m));
    for (int b = 0; b < m; ++b) {
        Rational acc;
        for (int a = 0; a < m; ++a) {
            acc += j0.at(b, a) * (dj[static_cast<std::size_t>(i)].at(a, j) - dj[static_cast<std::size_t>(j)].at(a, i));
            acc -= j0.at(a, i) * dj[static_cast<std::size_t>(a)].at(b, j);
            acc += j0.at(a, j) * dj[static_cast<std::size_t>(a)].at(b, i);
        }
        n[static_cast<std::size_t>(b)] = (kind == Kind::Complex) ? acc : -acc;
    }
    return n;
}

// Exact basis of the (para-)Kaehler curvature tensors: curvature symmetries
// plus the kind's Kaehler identity, solved in reduced orbit coordinates.
inline std::vector<Tensor4> kaehler_space_basis(const Structure& s) {
    static std::mutex mu;
    static std::map<std::pair<int, Kind>, std::shared_ptr<const std::vector<Tensor4>>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({s.m, s.kind});
        if (it != cache.end()) return *it->second;
    }
    int m = s.m;
    auto reps = curvature_reps(m);
    int ncols = static_cast<int>(reps.size());
    std::vector<std::vector<Rational>> rows;
    // Bianchi rows: quadruples i<j<k<l suffice for pair-symmetric tensors.
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = j + 1; k < m; ++k)
                for (int l = k + 1; l < m; ++l) {
                    std::vector<Rational> row(static_cast<std::size_t>(ncols));
                    const std::array<std::array<int, 4>, 3> terms{{{i, j, k, l}, {j, k, i, l}, {k, i, j, l}}};
                    for (const auto& q : terms) {
                        auto cq = canonical_quadruple(q[0], q[1], q[2], q[3]);
                        if (cq.forced_zero) continue;
                        row[static_cast<std::size_t>(rep_position(m, cq.rep))] += Rational(cq.sign);
                    }
                    rows.push_back(std::move(row));
                }
    // Kaehler rows: A(i,j,k,l) - sigma A(Ji,Jj,k,l) = 0 at every quadruple.
    // Swapping within a pair negates the whole row, but interchanging the
    // pairs does not commute with J on the first pair, so all ordered
    // combinations of two index pairs are needed, not just representatives.
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = k + 1; l < m; ++l) {
                    std::vector<Rational> row(static_cast<std::size_t>(ncols));
                    auto cq = canonical_quadruple(i, j, k, l);
                    row[static_cast<std::size_t>(rep_position(m, cq.rep))] += Rational(cq.sign);
                    auto cj = canonical_quadruple(s.jp(i), s.jp(j), k, l);
                    int sg = s.sigma * s.js(i) * s.js(j) * cj.sign;
                    row[static_cast<std::size_t>(rep_position(m, cj.rep))] -= Rational(sg);
                    bool nontrivial = false;
                    for (const auto& x : row)
                        if (!x.is_zero()) { nontrivial = true; break; }
                    if (nontrivial) rows.push_back(std::move(row));
                }
    Mat<Rational> c(static_cast<int>(rows.size()), ncols);
    for (int r = 0; r < c.rows; ++r)
        for (int col = 0; col < ncols; ++col) c.at(r, col) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
    auto ns = nullspace(c);
    auto basis = std::make_shared<std::vector<Tensor4>>();
    basis->reserve(ns.size());
    for (const auto& v : ns) basis->push_back(tensor_from_reduced(m, v));
    std::lock_guard<std::mutex> lock(mu);
    cache[{s.m, s.kind}] = basis;
    return *basis;
}

// Seed-deterministic random model. With kaehler_only the result is a random
// combination of the Kaehler basis; otherwise of the full curvature basis.
inline CurvatureModel random_model(const Structure& s, std::uint64_t seed, bool kaehler_only) {
    const std::vector<Tensor4> basis = kaehler_only ? kaehler_space_basis(s) : curvature_tensor_basis(s.m);
    Prng rng(seed);
    Tensor4 acc(s.m);
    for (const auto& b : basis) {
        Rational c = rng.rational(6, 4);
        if (!c.is_zero()) acc += c * b;
    }
    return CurvatureModel{s, std::move(acc)};
}

// tensor_ip-orthogonal projection onto the Kaehler subspace. The input must
// satisfy the curvature symmetries. DegenerateGram can occur only in the
// para kind, where the neutral-signature pairing may degenerate on a span.
inline Tensor4 project_to_kaehler(const Structure& s, const Tensor4& t) {
    validate_curvature_tensor(t);
    auto basis = kaehler_space_basis(s);
    std::vector<std::vector<Rational>> flat;
    flat.reserve(basis.size());
    for (const auto& b : basis) flat.push_back(b.a);
    auto ip = [&s, m = s.m](const std::vector<Rational>& x, const std::vector<Rational>& y) {
        Rational acc;
        std::size_t pos = 0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k)
                    for (int l = 0; l < m; ++l, ++pos) {
                        if (x[pos].is_zero() || y[pos].is_zero()) continue;
                        int w = s.eps(i) * s.eps(j) * s.eps(k) * s.eps(l);
                        if (w > 0) acc += x[pos] * y[pos];
                        else acc -= x[pos] * y[pos];
                    }
        return acc;
    };
    auto proj = gram_project(flat, t.a, ip);
    Tensor4 out(s.m);
    out.a = std::move(proj.projection);
    return out;
}

} // namespace kcm
