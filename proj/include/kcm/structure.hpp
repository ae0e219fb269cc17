#pragma once

// Standard (para-)Hermitian structures on R^m, m even >= 4.
//
// Complex kind: J e_{2k} = e_{2k+1}, J e_{2k+1} = -e_{2k} (0-based),
//   J^2 = -id, g0 = identity, sigma = +1.
// Para kind:    J e_{2k} = e_{2k+1}, J e_{2k+1} = +e_{2k},
//   J^2 = +id, g0 = diag(-1,+1,-1,+1,...), sigma = -1.
//
// sigma is the sign in both defining invariances: J-pullback on the metric
// slot of a Theta tensor (J*theta = sigma theta) and the Kaehler identity
// A(x,y,z,w) = sigma A(Jx,Jy,z,w). Both standard J's are signed basis
// permutations, which the index-level code exploits throughout.

#include <kcm/errors.hpp>
#include <kcm/linalg.hpp>
#include <kcm/rational.hpp>

#include <string>
#include <vector>

namespace kcm {

enum class Kind { Complex, Para };

inline const char* kind_name(Kind k) { return k == Kind::Complex ? "complex" : "para"; }

inline Kind kind_parse(const std::string& s) {
    if (s == "complex") return Kind::Complex;
    if (s == "para") return Kind::Para;
    throw ParseError("unknown structure kind: " + s);
}

struct Structure {
    int m = 0;
    int mbar = 0;
    Kind kind = Kind::Complex;
    std::vector<int> jperm;  // J e_i = jsign[i] * e_{jperm[i]}
    std::vector<int> jsign;
    std::vector<int> g0diag; // +-1 diagonal of g0 in the standard basis
    int sigma = 1;

    int eps(int i) const { return g0diag[static_cast<std::size_t>(i)]; }
    int jp(int i) const { return jperm[static_cast<std::size_t>(i)]; }
    int js(int i) const { return jsign[static_cast<std::size_t>(i)]; }

    Mat<Rational> j_matrix() const {
        Mat<Rational> J(m, m);
        for (int i = 0; i < m; ++i) J.at(jp(i), i) = Rational(js(i));
        return J;
    }

    Mat<Rational> g0_matrix() const {
        Mat<Rational> g(m, m);
        for (int i = 0; i < m; ++i) g.at(i, i) = Rational(eps(i));
        return g;
    }
};

inline Structure standard_structure(int m, Kind kind) {
    if (m < 4 || m % 2 != 0)
        throw BadDimension("structure dimension must be an even integer >= 4, got " + std::to_string(m));
    Structure s;
    s.m = m;
    s.mbar = m / 2;
    s.kind = kind;
    s.sigma = (kind == Kind::Complex) ? 1 : -1;
    s.jperm.resize(static_cast<std::size_t>(m));
    s.jsign.resize(static_cast<std::size_t>(m));
    s.g0diag.resize(static_cast<std::size_t>(m));
    for (int k = 0; k < s.mbar; ++k) {
        int a = 2 * k, b = 2 * k + 1;
        s.jperm[static_cast<std::size_t>(a)] = b;
        s.jperm[static_cast<std::size_t>(b)] = a;
        s.jsign[static_cast<std::size_t>(a)] = 1;
        s.jsign[static_cast<std::size_t>(b)] = (kind == Kind::Complex) ? -1 : 1;
    }
    for (int i = 0; i < m; ++i)
        s.g0diag[static_cast<std::size_t>(i)] = (kind == Kind::Complex) ? 1 : (i % 2 == 0 ? -1 : 1);
    return s;
}

} // namespace kcm
