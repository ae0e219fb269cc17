#pragma once

// Dense exact linear algebra over an arbitrary field scalar (Rational in
// the library; tests also instantiate univariate rational functions).
// Elimination uses the first nonzero entry in column order as pivot, so
// every result is deterministic: same input, same output, bit for bit.

#include <kcm/errors.hpp>
#include <kcm/rational.hpp>

#include <functional>
#include <optional>
#include <vector>

namespace kcm {

template <class T>
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    T& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const T& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = T(1);
        return m;
    }

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

template <class T>
Mat<T> operator+(Mat<T> x, const Mat<T>& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
    return x;
}

template <class T>
Mat<T> operator-(Mat<T> x, const Mat<T>& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
    return x;
}

template <class T>
Mat<T> operator*(const Mat<T>& x, const Mat<T>& y) {
    Mat<T> z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const T& xik = x.at(i, k);
            if (xik == T(0)) continue;
            for (int j = 0; j < y.cols; ++j) z.at(i, j) += xik * y.at(k, j);
        }
    return z;
}

template <class T>
std::vector<T> operator*(const Mat<T>& x, const std::vector<T>& v) {
    std::vector<T> r(static_cast<std::size_t>(x.rows));
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r[i] += x.at(i, j) * v[j];
    return r;
}

template <class T>
struct RrefResult {
    Mat<T> R;                   // reduced row echelon form
    std::vector<int> pivots;    // pivot column of each pivot row
    int rank = 0;
};

// Gauss-Jordan with exact division; pivots normalized to 1.
template <class T>
RrefResult<T> rref(Mat<T> m) {
    RrefResult<T> out;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (!(m.at(i, c) == T(0))) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        T inv = T(1) / m.at(r, c);
        for (int j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == T(0)) continue;
            T f = m.at(i, c);
            for (int j = c; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    out.R = std::move(m);
    return out;
}

// Basis of {x : Mx = 0}; one vector per free column, ascending, with the
// free coordinate set to 1. Exactness: M * v == 0 for every returned v.
template <class T>
std::vector<std::vector<T>> nullspace(const Mat<T>& m) {
    RrefResult<T> rr = rref(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols), false);
    for (int c : rr.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<std::vector<T>> basis;
    for (int f = 0; f < m.cols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        std::vector<T> v(static_cast<std::size_t>(m.cols));
        v[static_cast<std::size_t>(f)] = T(1);
        for (int r = 0; r < rr.rank; ++r)
            v[static_cast<std::size_t>(rr.pivots[static_cast<std::size_t>(r)])] = -rr.R.at(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

// One exact solution of Ax = b with all free variables set to zero,
// or nullopt when the system is inconsistent.
template <class T>
std::optional<std::vector<T>> solve_linear(const Mat<T>& m, const std::vector<T>& b) {
    Mat<T> aug(m.rows, m.cols + 1);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[static_cast<std::size_t>(i)];
    }
    RrefResult<T> rr = rref(std::move(aug));
    for (int r = 0; r < rr.rank; ++r)
        if (rr.pivots[static_cast<std::size_t>(r)] == m.cols) return std::nullopt;
    std::vector<T> x(static_cast<std::size_t>(m.cols));
    for (int r = 0; r < rr.rank; ++r)
        x[static_cast<std::size_t>(rr.pivots[static_cast<std::size_t>(r)])] = rr.R.at(r, m.cols);
    return x;
}

template <class T>
std::optional<Mat<T>> invert(const Mat<T>& m) {
    if (m.rows != m.cols) return std::nullopt;
    int n = m.rows;
    if (n == 0) return Mat<T>(0, 0);
    Mat<T> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = T(1);
    }
    RrefResult<T> rr = rref(std::move(aug));
    if (rr.rank < n || rr.pivots[static_cast<std::size_t>(n - 1)] >= n) return std::nullopt;
    Mat<T> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = rr.R.at(i, n + j);
    return inv;
}

template <class T>
struct GramProjection {
    std::vector<T> coeffs;      // coordinates in the given basis
    std::vector<T> projection;  // sum coeffs[i] * basis[i]
};

// Orthogonal projection of v onto span(basis) with respect to an arbitrary
// (possibly indefinite) bilinear form. The Gram matrix must be invertible;
// a singular Gram matrix means the span is degenerate for this form and is
// reported as such rather than silently mis-projected.
template <class T, class IP>
GramProjection<T> gram_project(const std::vector<std::vector<T>>& basis,
                               const std::vector<T>& v, IP&& ip) {
    int n = static_cast<int>(basis.size());
    Mat<T> gram(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gram.at(i, j) = ip(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]);
    std::vector<T> rhs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) rhs[static_cast<std::size_t>(i)] = ip(basis[static_cast<std::size_t>(i)], v);
    std::optional<Mat<T>> ginv = invert(gram);
    if (!ginv) throw DegenerateGram("gram matrix is singular for this inner product");
    GramProjection<T> out;
    out.coeffs = *ginv * rhs;
    out.projection.assign(v.size(), T(0));
    for (int i = 0; i < n; ++i)
        for (std::size_t k = 0; k < v.size(); ++k)
            out.projection[k] += out.coeffs[static_cast<std::size_t>(i)] * basis[static_cast<std::size_t>(i)][k];
    return out;
}

} // namespace kcm
