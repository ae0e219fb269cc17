#pragma once

// Dense rank-4 tensors and symmetric bilinear forms on R^m, plus the
// Z2-orbit bookkeeping of the curvature symmetries
//   A(x,y,z,w) = -A(y,x,z,w) = A(z,w,x,y).
// The orbit group has order 8 (swap either pair with a sign, interchange
// the pairs). A tensor with these symmetries is determined by its values
// on canonical representatives i<j, k<l, (i,j) <= (k,l); that reduced
// coordinate system keeps every linear-algebra problem small and exact.

#include <kcm/errors.hpp>
#include <kcm/rational.hpp>
#include <kcm/structure.hpp>

#include <array>
#include <cstddef>
#include <vector>

namespace kcm {

struct SymBil {
    int m = 0;
    std::vector<Rational> a;

    SymBil() = default;
    explicit SymBil(int mm) : m(mm), a(static_cast<std::size_t>(mm) * mm) {}

    Rational& at(int i, int j) { return a[static_cast<std::size_t>(i) * m + j]; }
    const Rational& at(int i, int j) const { return a[static_cast<std::size_t>(i) * m + j]; }
    void set(int i, int j, const Rational& v) { at(i, j) = v; at(j, i) = v; }

    friend bool operator==(const SymBil& x, const SymBil& y) { return x.m == y.m && x.a == y.a; }
};

struct Tensor4 {
    int m = 0;
    std::vector<Rational> a;

    Tensor4() = default;
    explicit Tensor4(int mm)
        : m(mm), a(static_cast<std::size_t>(mm) * mm * mm * mm) {}

    std::size_t idx(int i, int j, int k, int l) const {
        return ((static_cast<std::size_t>(i) * m + j) * m + k) * m + l;
    }
    Rational& at(int i, int j, int k, int l) { return a[idx(i, j, k, l)]; }
    const Rational& at(int i, int j, int k, int l) const { return a[idx(i, j, k, l)]; }

    bool is_zero() const {
        for (const auto& x : a)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Tensor4& x, const Tensor4& y) { return x.m == y.m && x.a == y.a; }

    Tensor4& operator+=(const Tensor4& o) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
        return *this;
    }
    Tensor4& operator-=(const Tensor4& o) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] -= o.a[i];
        return *this;
    }
    friend Tensor4 operator+(Tensor4 x, const Tensor4& y) { return x += y; }
    friend Tensor4 operator-(Tensor4 x, const Tensor4& y) { return x -= y; }
    friend Tensor4 operator*(const Rational& c, Tensor4 x) {
        for (auto& v : x.a) v *= c;
        return x;
    }
};

// Where a quadruple sits relative to its orbit: A(q) = sign * A(rep),
// or A(q) forced to zero when the orbit relations conflict (e.g. i == j).
struct CanonicalQuadruple {
    std::array<int, 4> rep{};
    int sign = 1;
    bool forced_zero = false;
};

inline CanonicalQuadruple canonical_quadruple(int i, int j, int k, int l) {
    std::array<std::pair<std::array<int, 4>, int>, 8> images;
    int n = 0;
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2)
            for (int s3 = 0; s3 < 2; ++s3) {
                std::array<int, 4> q{i, j, k, l};
                int sg = 1;
                if (s1) { std::swap(q[0], q[1]); sg = -sg; }
                if (s2) { std::swap(q[2], q[3]); sg = -sg; }
                if (s3) { std::swap(q[0], q[2]); std::swap(q[1], q[3]); }
                images[static_cast<std::size_t>(n++)] = {q, sg};
            }
    CanonicalQuadruple out;
    out.rep = images[0].first;
    out.sign = images[0].second;
    for (int x = 0; x < 8; ++x) {
        for (int y = x + 1; y < 8; ++y)
            if (images[static_cast<std::size_t>(x)].first == images[static_cast<std::size_t>(y)].first &&
                images[static_cast<std::size_t>(x)].second != images[static_cast<std::size_t>(y)].second)
                out.forced_zero = true;
        if (images[static_cast<std::size_t>(x)].first < out.rep) {
            out.rep = images[static_cast<std::size_t>(x)].first;
            out.sign = images[static_cast<std::size_t>(x)].second;
        }
    }
    // images hold A(image) = sign * A(q), so A(q) = sign * A(rep) as well
    // because all signs are +-1 and the group is its own inverse set.
    return out;
}

// Canonical representatives in lexicographic order: i<j, k<l, (i,j)<=(k,l).
inline std::vector<std::array<int, 4>> curvature_reps(int m) {
    std::vector<std::array<int, 4>> reps;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = k + 1; l < m; ++l)
                    if (std::array<int, 2>{i, j} <= std::array<int, 2>{k, l})
                        reps.push_back({i, j, k, l});
    return reps;
}

// Index of a representative inside curvature_reps(m).
inline int rep_position(int m, const std::array<int, 4>& r) {
    // pair id of (i,j), i<j, in lexicographic pair order
    auto pair_id = [m](int i, int j) { return i * (2 * m - i - 1) / 2 + (j - i - 1); };
    int p = pair_id(r[0], r[1]);
    int q = pair_id(r[2], r[3]);
    // reps enumerate pairs p <= q in lex order of (p, q)
    int npairs = m * (m - 1) / 2;
    // number of reps with first pair id < p: sum_{t<p} (npairs - t)
    int before = p * npairs - p * (p - 1) / 2;
    return before + (q - p);
}

// Entries at the canonical representatives, in curvature_reps order.
inline std::vector<Rational> to_reduced(const Tensor4& t) {
    std::vector<Rational> v;
    auto reps = curvature_reps(t.m);
    v.reserve(reps.size());
    for (const auto& r : reps) v.push_back(t.at(r[0], r[1], r[2], r[3]));
    return v;
}

// Expand reduced coordinates into the full tensor via the orbit relations.
inline Tensor4 tensor_from_reduced(int m, const std::vector<Rational>& vals) {
    Tensor4 t(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    auto c = canonical_quadruple(i, j, k, l);
                    if (c.forced_zero) continue;
                    const Rational& base = vals[static_cast<std::size_t>(rep_position(m, c.rep))];
                    if (base.is_zero()) continue;
                    t.at(i, j, k, l) = (c.sign > 0) ? base : -base;
                }
    return t;
}

inline Rational bianchi_sum(const Tensor4& t, int i, int j, int k, int l) {
    return t.at(i, j, k, l) + t.at(j, k, i, l) + t.at(k, i, j, l);
}

// Full check of the curvature symmetries. Throws with a witness quadruple
// (1-based in the message) on the lexicographically first failure.
inline void validate_curvature_tensor(const Tensor4& t) {
    int m = t.m;
    auto where = [](int i, int j, int k, int l) {
        return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
               std::to_string(k + 1) + "," + std::to_string(l + 1) + ")";
    };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    if (t.at(i, j, k, l) != -t.at(j, i, k, l))
                        throw SymmetryConflict("pair antisymmetry fails at " + where(i, j, k, l));
                    if (t.at(i, j, k, l) != t.at(k, l, i, j))
                        throw SymmetryConflict("pair interchange fails at " + where(i, j, k, l));
                }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    if (!bianchi_sum(t, i, j, k, l).is_zero())
                        throw BianchiViolation("first Bianchi identity fails at " + where(i, j, k, l));
}

// epsilon-weighted full contraction <A,B> = sum eps_i eps_j eps_k eps_l A_ijkl B_ijkl.
inline Rational tensor_ip(const Tensor4& x, const Tensor4& y, const Structure& s) {
    Rational acc;
    int m = s.m;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    const Rational& xv = x.at(i, j, k, l);
                    if (xv.is_zero()) continue;
                    const Rational& yv = y.at(i, j, k, l);
                    if (yv.is_zero()) continue;
                    int w = s.eps(i) * s.eps(j) * s.eps(k) * s.eps(l);
                    if (w > 0) acc += xv * yv;
                    else acc -= xv * yv;
                }
    return acc;
}

} // namespace kcm
