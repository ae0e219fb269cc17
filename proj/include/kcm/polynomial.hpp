#pragma once

// Sparse multivariate polynomials over Rational in a fixed number of
// variables u_1..u_m. Monomials are keyed by exponent vectors in an
// ordered map, so iteration (and hence serialization) is deterministic.

#include <kcm/errors.hpp>
#include <kcm/rational.hpp>

#include <map>
#include <vector>

namespace kcm {

class Poly {
public:
    Poly() = default;
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, const Rational& c) {
        Poly p(nvars);
        p.add_term(std::vector<int>(static_cast<std::size_t>(nvars)), c);
        return p;
    }

    static Poly var(int nvars, int i) {
        Poly p(nvars);
        std::vector<int> e(static_cast<std::size_t>(nvars));
        e[static_cast<std::size_t>(i)] = 1;
        p.add_term(e, Rational(1));
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, Rational>& terms() const { return terms_; }

    void add_term(const std::vector<int>& exp, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(exp);
        if (it == terms_.end()) {
            terms_.emplace(exp, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Rational coefficient(const std::vector<int>& exp) const {
        auto it = terms_.find(exp);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) {
            int t = 0;
            for (int x : e) t += x;
            if (t > d) d = t;
        }
        return d;
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r(a.nvars_);
        std::vector<int> e(static_cast<std::size_t>(a.nvars_));
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    friend Poly operator*(const Rational& c, Poly p) {
        if (c.is_zero()) return Poly(p.nvars_);
        for (auto& [e, v] : p.terms_) v *= c;
        return p;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    Poly derivative(int i) const {
        Poly r(nvars_);
        for (const auto& [e, c] : terms_) {
            int k = e[static_cast<std::size_t>(i)];
            if (k == 0) continue;
            std::vector<int> d = e;
            --d[static_cast<std::size_t>(i)];
            r.add_term(d, Rational(k) * c);
        }
        return r;
    }

    // drop every monomial of total degree > d
    Poly truncated(int d) const {
        Poly r(nvars_);
        for (const auto& [e, c] : terms_) {
            int t = 0;
            for (int x : e) t += x;
            if (t <= d) r.add_term(e, c);
        }
        return r;
    }

    // evaluate over any commutative ring T constructible from Rational
    template <class T>
    T eval(const std::vector<T>& pt) const {
        T acc = T(Rational(0));
        for (const auto& [e, c] : terms_) {
            T term = T(c);
            for (std::size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) term = term * pt[i];
            acc = acc + term;
        }
        return acc;
    }

    Rational eval_rational(const std::vector<Rational>& pt) const { return eval<Rational>(pt); }

private:
    int nvars_ = 0;
    std::map<std::vector<int>, Rational> terms_;
};

} // namespace kcm
