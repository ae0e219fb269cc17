#pragma once

// Truncated multivariate power series over Rational, the arithmetic domain
// of the constant-scalar-curvature solver. Every series carries its own
// truncation cap: coefficients of total degree <= cap are exact, anything
// beyond is discarded. Exact polynomials use the infinite cap sentinel.
// Binary operations produce the weaker (smaller) cap of their operands,
// and differentiation lowers a finite cap by one, so correctness of every
// retained coefficient is preserved by construction.

#include <kcm/errors.hpp>
#include <kcm/linalg.hpp>
#include <kcm/polynomial.hpp>
#include <kcm/rational.hpp>

#include <limits>
#include <map>
#include <vector>

namespace kcm {

inline constexpr int kInfCap = std::numeric_limits<int>::max();

class TruncSeries {
public:
    TruncSeries() = default;
    TruncSeries(int nvars, int cap) : nvars_(nvars), cap_(cap) {}

    static TruncSeries from_poly(const Poly& p, int cap = kInfCap) {
        TruncSeries s(p.nvars(), cap);
        for (const auto& [e, c] : p.terms()) s.add_term(e, c);
        return s;
    }
    static TruncSeries constant(int nvars, const Rational& c, int cap = kInfCap) {
        TruncSeries s(nvars, cap);
        std::vector<int> e(static_cast<std::size_t>(nvars), 0);
        s.add_term(e, c);
        return s;
    }

    int nvars() const { return nvars_; }
    int cap() const { return cap_; }
    const std::map<std::vector<int>, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const std::vector<int>& exp, const Rational& c) {
        if (c.is_zero()) return;
        int deg = 0;
        for (int k : exp) deg += k;
        if (cap_ != kInfCap && deg > cap_) return;
        auto it = terms_.find(exp);
        if (it == terms_.end()) {
            terms_.emplace(exp, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    Rational coefficient(const std::vector<int>& exp) const {
        auto it = terms_.find(exp);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    TruncSeries truncated(int cap) const {
        if (cap >= cap_) {
            TruncSeries s = *this;
            s.cap_ = cap;
            return s;
        }
        TruncSeries s(nvars_, cap);
        for (const auto& [e, c] : terms_) s.add_term(e, c);
        return s;
    }

    TruncSeries derivative(int i) const {
        TruncSeries s(nvars_, cap_ == kInfCap ? kInfCap : cap_ - 1);
        for (const auto& [e, c] : terms_) {
            if (e[static_cast<std::size_t>(i)] == 0) continue;
            std::vector<int> d = e;
            int k = d[static_cast<std::size_t>(i)]--;
            s.add_term(d, Rational(k) * c);
        }
        return s;
    }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries s(a.nvars_, std::min(a.cap_, b.cap_));
        for (const auto& [e, c] : a.terms_) s.add_term(e, c);
        for (const auto& [e, c] : b.terms_) s.add_term(e, c);
        return s;
    }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries s(a.nvars_, std::min(a.cap_, b.cap_));
        for (const auto& [e, c] : a.terms_) s.add_term(e, c);
        for (const auto& [e, c] : b.terms_) s.add_term(e, -c);
        return s;
    }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries s(a.nvars_, std::min(a.cap_, b.cap_));
        if (a.terms_.empty() || b.terms_.empty()) return s;
        for (const auto& [ea, ca] : a.terms_) {
            int da = 0;
            for (int k : ea) da += k;
            for (const auto& [eb, cb] : b.terms_) {
                if (s.cap_ != kInfCap) {
                    int db = da;
                    for (int k : eb) db += k;
                    if (db > s.cap_) continue;
                }
                std::vector<int> e = ea;
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                s.add_term(e, ca * cb);
            }
        }
        return s;
    }
    friend TruncSeries operator*(const Rational& c, const TruncSeries& a) {
        TruncSeries s(a.nvars_, a.cap_);
        for (const auto& [e, v] : a.terms_) s.add_term(e, c * v);
        return s;
    }
    TruncSeries operator-() const { return Rational(-1) * *this; }
    TruncSeries& operator+=(const TruncSeries& o) { return *this = *this + o; }
    TruncSeries& operator-=(const TruncSeries& o) { return *this = *this - o; }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        return a.nvars_ == b.nvars_ && a.cap_ == b.cap_ && a.terms_ == b.terms_;
    }

    // multiplicative inverse of a series with invertible constant term,
    // to the same cap; a nonconstant series needs a finite cap
    TruncSeries invert_unit() const {
        std::vector<int> zero(static_cast<std::size_t>(nvars_), 0);
        Rational c0 = coefficient(zero);
        if (c0.is_zero()) throw NotAUnit("series has zero constant term");
        if (cap_ == kInfCap) {
            if (terms_.size() > 1)
                throw NotAUnit("nonconstant series has no polynomial inverse; truncate first");
            return constant(nvars_, Rational(1) / c0, kInfCap);
        }
        // f = c0 (1 - h) with h of positive order; 1/f = (1/c0) sum h^k
        TruncSeries h(nvars_, cap_);
        Rational inv0 = Rational(1) / c0;
        for (const auto& [e, c] : terms_) {
            if (e == zero) continue;
            h.add_term(e, -(inv0 * c));
        }
        TruncSeries acc = constant(nvars_, Rational(1), cap_);
        TruncSeries pw = constant(nvars_, Rational(1), cap_);
        for (int k = 1; k <= cap_; ++k) {
            pw = pw * h;
            if (pw.is_zero()) break;
            acc += pw;
        }
        return inv0 * acc;
    }

private:
    int nvars_ = 0;
    int cap_ = kInfCap;
    std::map<std::vector<int>, Rational> terms_;
};

// Inverse of a square matrix of series whose constant-term matrix is
// invertible, via Newton iteration X <- X (2I - M X); the order of
// contact doubles each round, and the loop runs until the capped residual
// I - M X is exactly zero.
inline Mat<TruncSeries> series_matrix_inverse(const Mat<TruncSeries>& mser, int nvars, int cap) {
    int n = mser.rows;
    Mat<Rational> c0(n, n);
    std::vector<int> zero(static_cast<std::size_t>(nvars), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c0.at(i, j) = mser.at(i, j).coefficient(zero);
    auto inv0 = invert(c0);
    if (!inv0) throw SingularMetric("matrix of series is singular at the origin");

    Mat<TruncSeries> m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = mser.at(i, j).truncated(cap);
    Mat<TruncSeries> x(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x.at(i, j) = TruncSeries::constant(nvars, inv0->at(i, j), cap);

    auto residual = [&]() { // I - m x
        Mat<TruncSeries> r(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                TruncSeries acc(nvars, cap);
                for (int k = 0; k < n; ++k) acc += m.at(i, k) * x.at(k, j);
                if (i == j) acc = TruncSeries::constant(nvars, Rational(1), cap) - acc;
                else acc = -acc;
                r.at(i, j) = acc;
            }
        return r;
    };
    for (int round = 0; round < 64; ++round) {
        Mat<TruncSeries> e = residual();
        bool done = true;
        for (const auto& s : e.a)
            if (!s.is_zero()) { done = false; break; }
        if (done) return x;
        Mat<TruncSeries> nx(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                TruncSeries acc = x.at(i, j);
                for (int k = 0; k < n; ++k) acc += x.at(i, k) * e.at(k, j);
                nx.at(i, j) = acc;
            }
        x = std::move(nx);
    }
    throw InternalInvariantViolation("series matrix inversion failed to converge");
}

} // namespace kcm
