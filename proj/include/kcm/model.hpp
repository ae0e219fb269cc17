#pragma once

// Algebraic curvature models: a standard structure plus a rank-4 tensor
// with the curvature symmetries (pair antisymmetry, pair interchange,
// first Bianchi). Sparse component lists use 1-based indices, matching
// the file format; everything in memory is 0-based.

#include <kcm/errors.hpp>
#include <kcm/structure.hpp>
#include <kcm/tensor.hpp>

#include <string>
#include <vector>

namespace kcm {

struct ComponentEntry {
    int i = 0, j = 0, k = 0, l = 0; // 1-based
    Rational v;
};

struct CurvatureModel {
    Structure s;
    Tensor4 a;
};

namespace detail {
inline std::string quad_str_1based(int i, int j, int k, int l) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
           std::to_string(k + 1) + "," + std::to_string(l + 1) + ")";
}
} // namespace detail

// Completes sparse components by the Z2 symmetries, then checks Bianchi.
// A listed value that conflicts with the orbit relations (or with another
// listed entry) is a SymmetryConflict; a completed tensor that fails the
// first Bianchi identity is a BianchiViolation. Zero entries may be listed
// and are ignored unless they conflict.
inline CurvatureModel model_from_components(const Structure& s, const std::vector<ComponentEntry>& entries) {
    int m = s.m;
    Tensor4 t(m);
    std::vector<char> have(t.a.size(), 0);
    for (const auto& e : entries) {
        if (e.i < 1 || e.i > m || e.j < 1 || e.j > m || e.k < 1 || e.k > m || e.l < 1 || e.l > m)
            throw ParseError("component index out of range 1.." + std::to_string(m));
        int i = e.i - 1, j = e.j - 1, k = e.k - 1, l = e.l - 1;
        auto c = canonical_quadruple(i, j, k, l);
        if (c.forced_zero && !e.v.is_zero())
            throw SymmetryConflict("orbit of " + detail::quad_str_1based(i, j, k, l) +
                                   " is forced to zero by antisymmetry");
        // write the full orbit of the representative
        for (int s1 = 0; s1 < 2; ++s1)
            for (int s2 = 0; s2 < 2; ++s2)
                for (int s3 = 0; s3 < 2; ++s3) {
                    int q[4] = {i, j, k, l};
                    int sg = 1;
                    if (s1) { std::swap(q[0], q[1]); sg = -sg; }
                    if (s2) { std::swap(q[2], q[3]); sg = -sg; }
                    if (s3) { std::swap(q[0], q[2]); std::swap(q[1], q[3]); }
                    Rational val = (sg > 0) ? e.v : -e.v;
                    std::size_t pos = t.idx(q[0], q[1], q[2], q[3]);
                    if (have[pos]) {
                        if (t.a[pos] != val)
                            throw SymmetryConflict("conflicting values in the orbit of " +
                                                   detail::quad_str_1based(i, j, k, l));
                    } else {
                        t.a[pos] = val;
                        have[pos] = 1;
                    }
                }
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    if (!bianchi_sum(t, i, j, k, l).is_zero())
                        throw BianchiViolation("first Bianchi identity fails at " +
                                               detail::quad_str_1based(i, j, k, l));
    return CurvatureModel{s, std::move(t)};
}

// Wraps a dense tensor after a full symmetry check.
inline CurvatureModel model_from_tensor(const Structure& s, Tensor4 t) {
    if (t.m != s.m) throw BadDimension("tensor dimension does not match structure");
    validate_curvature_tensor(t);
    return CurvatureModel{s, std::move(t)};
}

// Sparse writer form: one entry per nonzero orbit, at the lexicographically
// least representative, in representative order.
inline std::vector<ComponentEntry> model_components(const Tensor4& t) {
    std::vector<ComponentEntry> out;
    for (const auto& r : curvature_reps(t.m)) {
        const Rational& v = t.at(r[0], r[1], r[2], r[3]);
        if (!v.is_zero()) out.push_back({r[0] + 1, r[1] + 1, r[2] + 1, r[3] + 1, v});
    }
    return out;
}

// Exact basis of the space of all curvature tensors (pair antisymmetries and
// pair interchange plus first Bianchi, no J condition). Dimension is
// m^2(m^2-1)/12: 20 at m=4, 105 at m=6.
inline std::vector<Tensor4> curvature_tensor_basis(int m) {
    auto reps = curvature_reps(m);
    int ncols = static_cast<int>(reps.size());
    // For pair-symmetric tensors the Bianchi map is alternating, so the
    // quadruples i<j<k<l give all independent constraints.
    std::vector<std::array<int, 4>> rows;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = j + 1; k < m; ++k)
                for (int l = k + 1; l < m; ++l) rows.push_back({i, j, k, l});
    Mat<Rational> c(static_cast<int>(rows.size()), ncols);
    for (int r = 0; r < c.rows; ++r) {
        auto [i, j, k, l] = rows[static_cast<std::size_t>(r)];
        const std::array<std::array<int, 4>, 3> terms{{{i, j, k, l}, {j, k, i, l}, {k, i, j, l}}};
        for (const auto& q : terms) {
            auto cq = canonical_quadruple(q[0], q[1], q[2], q[3]);
            if (cq.forced_zero) continue;
            c.at(r, rep_position(m, cq.rep)) += Rational(cq.sign);
        }
    }
    std::vector<Tensor4> basis;
    for (const auto& v : nullspace(c)) basis.push_back(tensor_from_reduced(m, v));
    return basis;
}

} // namespace kcm
