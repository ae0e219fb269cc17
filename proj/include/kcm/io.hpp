#pragma once

// JSON serialization for every file format the toolkit exchanges (models,
// product tensors, polynomial metrics, potentials, identity reports) plus
// the built-in fixtures. All rationals travel as strings, all emission
// orders are deterministic, and parse(emit(x)) == x exactly.

#include <kcm/engine.hpp>
#include <kcm/errors.hpp>
#include <kcm/identities.hpp>
#include <kcm/metric.hpp>
#include <kcm/model.hpp>
#include <kcm/polynomial.hpp>
#include <kcm/potential.hpp>
#include <kcm/structure.hpp>
#include <kcm/theta.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace kcm {

using Json = nlohmann::ordered_json;

namespace detail {

inline Rational rational_field(const Json& j, const char* what) {
    if (!j.is_string()) throw ParseError(std::string("expected a rational string for ") + what);
    return Rational::parse(j.get<std::string>());
}

inline int int_field(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string("expected an integer for ") + what);
    return j.get<int>();
}

inline Structure structure_from_json(const Json& j) {
    if (!j.contains("m") || !j.contains("kind")) throw ParseError("missing m or kind");
    int m = int_field(j.at("m"), "m");
    if (!j.at("kind").is_string()) throw ParseError("expected a string for kind");
    return standard_structure(m, kind_parse(j.at("kind").get<std::string>()));
}

inline Json sparse_entry(int i, int j, int k, int l, const Rational& v) {
    Json e;
    e["i"] = i;
    e["j"] = j;
    e["k"] = k;
    e["l"] = l;
    e["v"] = v.str();
    return e;
}

} // namespace detail

// ---- curvature models -----------------------------------------------------

inline Json model_to_json(const CurvatureModel& mod) {
    Json j;
    j["m"] = mod.s.m;
    j["kind"] = kind_name(mod.s.kind);
    Json list = Json::array();
    for (const auto& e : model_components(mod.a)) list.push_back(detail::sparse_entry(e.i, e.j, e.k, e.l, e.v));
    j["A"] = list;
    return j;
}

inline CurvatureModel model_from_json(const Json& j) {
    Structure s = detail::structure_from_json(j);
    if (!j.contains("A") || !j.at("A").is_array()) throw ParseError("model file needs an entry list under \"A\"");
    std::vector<ComponentEntry> entries;
    for (const auto& e : j.at("A")) {
        entries.push_back({detail::int_field(e.at("i"), "i"), detail::int_field(e.at("j"), "j"),
                           detail::int_field(e.at("k"), "k"), detail::int_field(e.at("l"), "l"),
                           detail::rational_field(e.at("v"), "v")});
    }
    return model_from_components(s, entries);
}

// ---- product tensors ------------------------------------------------------

inline Json theta_to_json(const ThetaTensor& th) {
    Json j;
    j["m"] = th.s.m;
    j["kind"] = kind_name(th.s.kind);
    Json list = Json::array();
    int m = th.s.m;
    for (int i = 0; i < m; ++i)
        for (int jj = i; jj < m; ++jj)
            for (int k = 0; k < m; ++k)
                for (int l = k; l < m; ++l) {
                    const Rational& v = th.t.at(i, jj, k, l);
                    if (!v.is_zero()) list.push_back(detail::sparse_entry(i + 1, jj + 1, k + 1, l + 1, v));
                }
    j["T"] = list;
    return j;
}

inline ThetaTensor theta_from_json(const Json& j) {
    Structure s = detail::structure_from_json(j);
    if (!j.contains("T") || !j.at("T").is_array()) throw ParseError("theta file needs an entry list under \"T\"");
    int m = s.m;
    Tensor4 t(m);
    std::vector<bool> seen(t.a.size(), false);
    for (const auto& e : j.at("T")) {
        int i = detail::int_field(e.at("i"), "i"), jj = detail::int_field(e.at("j"), "j");
        int k = detail::int_field(e.at("k"), "k"), l = detail::int_field(e.at("l"), "l");
        Rational v = detail::rational_field(e.at("v"), "v");
        if (i < 1 || jj < 1 || k < 1 || l < 1 || i > m || jj > m || k > m || l > m)
            throw ParseError("theta entry index out of range");
        --i; --jj; --k; --l;
        std::size_t pos = ((static_cast<std::size_t>(std::min(i, jj)) * m + std::max(i, jj)) * m +
                           std::min(k, l)) * m + std::max(k, l);
        if (seen[pos]) throw ParseError("duplicate theta entry");
        seen[pos] = true;
        // the reader completes the pair symmetries
        t.at(i, jj, k, l) = v;
        t.at(jj, i, k, l) = v;
        t.at(i, jj, l, k) = v;
        t.at(jj, i, l, k) = v;
    }
    return theta_from_tensor(s, std::move(t));
}

// ---- polynomial metrics ---------------------------------------------------

inline Json poly_to_json(const Poly& p) {
    Json list = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json mono;
        mono["exp"] = e;
        mono["c"] = c.str();
        list.push_back(mono);
    }
    return list;
}

inline Poly poly_from_json(const Json& j, int nvars, const char* what) {
    if (!j.is_array()) throw ParseError(std::string("expected a monomial list for ") + what);
    Poly p(nvars);
    for (const auto& mono : j) {
        if (!mono.contains("exp") || !mono.at("exp").is_array() ||
            static_cast<int>(mono.at("exp").size()) != nvars)
            throw ParseError(std::string("bad exponent vector in ") + what);
        std::vector<int> e;
        for (const auto& x : mono.at("exp")) {
            int k = detail::int_field(x, "exp");
            if (k < 0) throw ParseError("negative exponent");
            e.push_back(k);
        }
        p.add_term(e, detail::rational_field(mono.at("c"), "c"));
    }
    return p;
}

inline Json metric_to_json(const PolynomialMetric& g) {
    Json j;
    j["m"] = g.s.m;
    j["kind"] = kind_name(g.s.kind);
    Json list = Json::array();
    int m = g.s.m;
    for (int i = 0; i < m; ++i)
        for (int jj = i; jj < m; ++jj) {
            const Poly& p = g.at(i, jj);
            if (p.is_zero()) continue;
            Json entry;
            entry["i"] = i + 1;
            entry["j"] = jj + 1;
            entry["monomials"] = poly_to_json(p);
            list.push_back(entry);
        }
    j["entries"] = list;
    return j;
}

inline PolynomialMetric metric_from_json(const Json& j) {
    Structure s = detail::structure_from_json(j);
    if (!j.contains("entries") || !j.at("entries").is_array())
        throw ParseError("metric file needs an entry list under \"entries\"");
    int m = s.m;
    PolynomialMetric g(s);
    std::vector<bool> seen(g.entries.size(), false);
    for (const auto& e : j.at("entries")) {
        int i = detail::int_field(e.at("i"), "i"), jj = detail::int_field(e.at("j"), "j");
        if (i < 1 || jj < 1 || i > m || jj > m) throw ParseError("metric entry index out of range");
        --i; --jj;
        std::size_t pos = static_cast<std::size_t>(std::min(i, jj)) * m + std::max(i, jj);
        if (seen[pos]) throw ParseError("duplicate metric entry");
        seen[pos] = true;
        Poly p = poly_from_json(e.at("monomials"), m, "metric entry");
        g.entries[static_cast<std::size_t>(i) * m + jj] = p;
        g.entries[static_cast<std::size_t>(jj) * m + i] = p;
    }
    validate_metric(g);
    return g;
}

// ---- potentials -----------------------------------------------------------

inline Json potential_to_json(const Potential& pot) {
    Json j;
    j["m"] = pot.s.m;
    j["kind"] = kind_name(pot.s.kind);
    j["c"] = pot.c.str();
    j["N"] = pot.degree;
    j["phi"] = poly_to_json(pot.phi);
    j["residual_zero_through"] = pot.residual_zero_through;
    return j;
}

inline Potential potential_from_json(const Json& j) {
    Structure s = detail::structure_from_json(j);
    if (!j.contains("c") || !j.contains("N") || !j.contains("phi"))
        throw ParseError("potential file needs c, N and phi");
    Potential pot{s, poly_from_json(j.at("phi"), s.m, "phi"),
                  detail::rational_field(j.at("c"), "c"),
                  detail::int_field(j.at("N"), "N"),
                  j.contains("residual_zero_through")
                      ? detail::int_field(j.at("residual_zero_through"), "residual_zero_through")
                      : 0};
    for (const auto& [e, c] : pot.phi.terms())
        if (e[static_cast<std::size_t>(s.m) - 1] < 4)
            throw ParseError("potential jet violates the zero Cauchy data normalization");
    return pot;
}

// ---- identity reports -----------------------------------------------------

inline Json identity_report_to_json(const IdentityReport& rep) {
    Json j;
    j["identity"] = rep.identity;
    j["holds"] = rep.holds;
    if (!rep.holds) {
        Json at = Json::array();
        for (int x : rep.at) at.push_back(x + 1);
        j["at"] = at;
        j["value"] = rep.value.str();
    }
    return j;
}

// ---- fixtures -------------------------------------------------------------

// 1/2 (e^1 (x) e^1 + s e^2 (x) e^2) (x) (e^1 (x) e^1 + s e^2 (x) e^2),
// s = +1 complex / -1 para: the two surface-product examples
inline ThetaTensor surface_product_theta(Kind kind) {
    Structure s = standard_structure(4, kind);
    int sg = (kind == Kind::Complex) ? 1 : -1;
    SymBil form(4);
    form.set(0, 0, Rational(1));
    form.set(1, 1, Rational(sg));
    Tensor4 t(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    Rational v = Rational(1, 2) * form.at(i, j) * form.at(k, l);
                    if (!v.is_zero()) t.at(i, j, k, l) = v;
                }
    return theta_from_tensor(s, std::move(t));
}

inline CurvatureModel surface_product_model(Kind kind) {
    return model_from_components(standard_structure(4, kind), {{1, 2, 2, 1, Rational(1)}});
}

// The flat-but-nonintegrable almost complex structure on R^6 in coordinates
// (x1, y1, x2, y2, x3, y3): J agrees with the standard structure at the
// origin, and its only nonzero first derivative there is in the x3
// direction.
struct GrayFixture {
    Structure s;
    Mat<Rational> j0;
    std::vector<Mat<Rational>> dj; // dj[k] = d_k J at the origin
};

inline GrayFixture gray_nonintegrable_r6() {
    GrayFixture f{standard_structure(6, Kind::Complex), Mat<Rational>(6, 6),
                  std::vector<Mat<Rational>>(6, Mat<Rational>(6, 6))};
    f.j0 = f.s.j_matrix();
    Mat<Rational>& d = f.dj[4]; // d/dx3
    d.at(3, 0) = Rational(1);
    d.at(2, 1) = Rational(1);
    d.at(1, 2) = Rational(-1);
    d.at(0, 3) = Rational(-1);
    return f;
}

inline Json fixture_json(const std::string& name) {
    auto matrix_json = [](const Mat<Rational>& m) {
        Json rows = Json::array();
        for (int i = 0; i < m.rows; ++i) {
            Json row = Json::array();
            for (int j = 0; j < m.cols; ++j) row.push_back(m.at(i, j).str());
            rows.push_back(row);
        }
        return rows;
    };
    Json j;
    j["name"] = name;
    if (name == "kaehler-surface-product" || name == "para-surface-product") {
        Kind kind = (name == "kaehler-surface-product") ? Kind::Complex : Kind::Para;
        j["m"] = 4;
        j["kind"] = kind_name(kind);
        j["model"] = model_to_json(surface_product_model(kind));
        j["theta"] = theta_to_json(surface_product_theta(kind));
        return j;
    }
    if (name == "gray-nonintegrable-r6") {
        GrayFixture f = gray_nonintegrable_r6();
        j["m"] = 6;
        j["kind"] = kind_name(Kind::Complex);
        j["J0"] = matrix_json(f.j0);
        Json dj = Json::array();
        for (const auto& d : f.dj) dj.push_back(matrix_json(d));
        j["dJ"] = dj;
        return j;
    }
    throw UnknownFixture("no fixture named " + name);
}

} // namespace kcm
