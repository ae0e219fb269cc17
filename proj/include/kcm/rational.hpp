#pragma once

// Arbitrary-precision rational scalar. Thin wrapper over GMP's mpq_class
// that pins the invariants every module relies on: value is always in
// lowest terms with positive denominator, and serialization is "p/q"
// (or "p" when q == 1) with the sign on the numerator only.

#include <kcm/errors.hpp>

#include <gmpxx.h>

#include <ostream>
#include <string>
#include <string_view>

namespace kcm {

class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(int n) : v_(n) {}
    Rational(long num, long den) {
        if (den == 0) throw ParseError("rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Accepts "-?digits" or "-?digits/digits"; anything else is a ParseError.
    static Rational parse(std::string_view s) {
        if (s.empty()) throw ParseError("empty rational literal");
        std::size_t pos = (s[0] == '-') ? 1 : 0; // sign allowed on the numerator only
        auto digits = [&](std::size_t from, std::size_t to) {
            if (from >= to) return false;
            for (std::size_t i = from; i < to; ++i)
                if (s[i] < '0' || s[i] > '9') return false;
            return true;
        };
        std::size_t slash = s.find('/', pos);
        std::string text(s);
        if (slash == std::string_view::npos) {
            if (!digits(pos, s.size()))
                throw ParseError("bad rational literal: " + text);
            mpz_class num(text);
            return Rational(mpq_class(num));
        }
        if (!digits(pos, slash) || !digits(slash + 1, s.size()))
            throw ParseError("bad rational literal: " + text);
        mpz_class num(std::string(s.substr(0, slash)));
        mpz_class den(std::string(s.substr(slash + 1)));
        if (den == 0) throw ParseError("zero denominator: " + text);
        mpq_class q(num, den);
        q.canonicalize();
        return Rational(q);
    }

    std::string str() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational numerator() const { return Rational(mpq_class(v_.get_num())); }
    Rational denominator() const { return Rational(mpq_class(v_.get_den())); }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw Error("division by zero rational");
        return Rational(mpq_class(a.v_ / b.v_));
    }
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    friend Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class v_; // canonical: lowest terms, denominator > 0
};

} // namespace kcm
