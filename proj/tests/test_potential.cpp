#include <catch2/catch_amalgamated.hpp>

#include <kcm/engine.hpp>
#include <kcm/potential.hpp>
#include <kcm/prng.hpp>
#include <kcm/theta.hpp>

#include "helpers.hpp"
#include "ratfunc.hpp"

#include <vector>

using namespace kcm;
using kcmtest::RatFunc;
using kcmtest::random_nonkernel_theta;
using kcmtest::random_point;
using kcmtest::random_theta;
using kcmtest::surface_theta;

namespace {

Poly monomial(int nvars, const std::vector<int>& e, const Rational& c) {
    Poly p(nvars);
    p.add_term(e, c);
    return p;
}

Poly random_potential(int nvars, std::uint64_t seed, int maxdeg) {
    Prng rng(seed);
    Poly p(nvars);
    std::vector<int> e(static_cast<std::size_t>(nvars), 0);
    for (int trial = 0; trial < 12; ++trial) {
        int deg = rng.int_in(0, maxdeg);
        for (auto& x : e) x = 0;
        for (int d = 0; d < deg; ++d) ++e[static_cast<std::size_t>(rng.int_in(0, nvars - 1))];
        p.add_term(e, rng.rational(4, 3));
    }
    return p;
}

// all phi monomials have u_m-power >= 4 (zero Cauchy data)
void require_zero_cauchy_data(const Poly& phi, int m) {
    for (const auto& [e, c] : phi.terms()) REQUIRE(e[static_cast<std::size_t>(m) - 1] >= 4);
}

} // namespace

TEST_CASE("kappa: pinned examples") {
    Structure s = standard_structure(4, Kind::Complex);

    // u_1^2 + u_2^2 -> du_1^2 + du_2^2
    Poly pp = monomial(4, {2, 0, 0, 0}, Rational(1)) + monomial(4, {0, 2, 0, 0}, Rational(1));
    auto k1 = kappa(s, pp);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Poly expect(4);
            if (a == b && a < 2) expect = Poly::constant(4, Rational(1));
            REQUIRE(k1[static_cast<std::size_t>(a) * 4 + b] == expect);
        }

    // u_1^2 - u_2^2 is J-anti-invariant: kappa kills it in the complex kind
    Poly pm = monomial(4, {2, 0, 0, 0}, Rational(1)) - monomial(4, {0, 2, 0, 0}, Rational(1));
    for (const auto& entry : kappa(s, pm)) REQUIRE(entry.is_zero());

    // u_4^4 -> 3 u_4^2 (du_3^2 + du_4^2)
    auto k3 = kappa(s, monomial(4, {0, 0, 0, 4}, Rational(1)));
    Poly expect22 = monomial(4, {0, 0, 0, 2}, Rational(3));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Poly expect(4);
            if (a == b && a >= 2) expect = expect22;
            REQUIRE(k3[static_cast<std::size_t>(a) * 4 + b] == expect);
        }

    // para kind swaps the roles of the two quadratics
    Structure sp = standard_structure(4, Kind::Para);
    for (const auto& entry : kappa(sp, pp)) REQUIRE(entry.is_zero());
    auto kp = kappa(sp, pm);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Poly expect(4);
            if (a == b && a == 0) expect = Poly::constant(4, Rational(1));
            if (a == b && a == 1) expect = Poly::constant(4, Rational(-1));
            REQUIRE(kp[static_cast<std::size_t>(a) * 4 + b] == expect);
        }
}

TEST_CASE("kappa: structure compatibility for arbitrary potentials") {
    for (Kind kind : {Kind::Complex, Kind::Para}) {
        Structure s = standard_structure(4, kind);
        int sp = (kind == Kind::Complex) ? 1 : -1;
        Poly phi = random_potential(4, 88 + static_cast<int>(kind), 4);
        auto k = kappa(s, phi);

        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                const Poly& kab = k[static_cast<std::size_t>(a) * 4 + b];
                // symmetry
                REQUIRE(kab == k[static_cast<std::size_t>(b) * 4 + a]);
                // kappa(Ja, Jb) = s' kappa(a, b), the (para-)Hermitian condition
                Poly jj = k[static_cast<std::size_t>(s.jp(a)) * 4 + s.jp(b)];
                int sg = s.js(a) * s.js(b) * sp;
                REQUIRE(((sg > 0) ? jj : Rational(-1) * jj) == kab);
            }

        // the correction never disturbs the Kaehler form: dOmega of
        // (flat + kappa) vanishes identically as a polynomial 3-form
        PolynomialMetric g = perturbed_metric(flat_metric(s), k);
        for (const auto& poly : domega_polynomials(g)) REQUIRE(poly.is_zero());
    }
}

TEST_CASE("scalar curvature series: anchors and exactness") {
    for (Kind kind : {Kind::Complex, Kind::Para}) {
        Structure s = standard_structure(4, kind);
        TruncSeries flat = scalar_curvature_series(flat_metric(s), 4);
        REQUIRE(flat.is_zero());

        PolynomialMetric g = metric_from_theta(surface_theta(kind));
        std::vector<int> zero(4, 0);
        TruncSeries tau = scalar_curvature_series(g, 2);
        REQUIRE(tau.coefficient(zero) == Rational(-2));
        REQUIRE(tau.coefficient(zero) == scalar_curvature_at(g, Point(4, Rational(0))));
    }
}

TEST_CASE("scalar curvature series matches exact evaluation along a line") {
    Structure s = standard_structure(4, Kind::Complex);
    ThetaTensor th = random_theta(s, 321);
    PolynomialMetric g = metric_from_theta(th);
    Prng rng(42);
    Point p0 = random_point(rng, g);

    int cap = 3;
    TruncSeries tau = scalar_curvature_series(g, cap);
    // restrict the multivariate jet to the line u = t p0
    std::vector<Rational> restricted(static_cast<std::size_t>(cap) + 1);
    for (const auto& [e, c] : tau.terms()) {
        int deg = 0;
        Rational v = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            deg += e[i];
            for (int k = 0; k < e[i]; ++k) v *= p0[i];
        }
        restricted[static_cast<std::size_t>(deg)] += v;
    }

    std::vector<RatFunc> line;
    for (const auto& x : p0) line.push_back(RatFunc(x) * RatFunc::t());
    auto taylor = scalar_curvature_value_at<RatFunc>(g, line).taylor(cap);
    REQUIRE(restricted == taylor);
}

TEST_CASE("solve_csc: flat base, zero target leaves the metric alone") {
    for (Kind kind : {Kind::Complex, Kind::Para}) {
        Structure s = standard_structure(4, kind);
        ThetaTensor zero{s, Tensor4(4)};
        Potential pot = solve_csc(zero, Rational(0), 6);
        REQUIRE(pot.phi.is_zero());
        REQUIRE(pot.residual_zero_through == 2);
    }
}

TEST_CASE("solve_csc: flat base, unit target") {
    Structure s = standard_structure(4, Kind::Complex);
    ThetaTensor zero{s, Tensor4(4)};
    Potential pot = solve_csc(zero, Rational(1), 6);

    // the quartic normal term carries the whole degree-0 residual:
    // tau_lin = -1/4 Delta^2, and Delta^2 u_4^4 = 24, so phi starts at
    // -u_4^4/6; the degree-5 layer vanishes by parity
    REQUIRE(pot.phi.coefficient({0, 0, 0, 4}) == Rational(-1, 6));
    for (const auto& [e, c] : pot.phi.terms()) {
        int deg = 0;
        for (int x : e) deg += x;
        REQUIRE(deg != 5);
    }
    require_zero_cauchy_data(pot.phi, 4);
    REQUIRE(pot.residual_zero_through == 2);

    // re-verify the residual independently of the solver's own check
    PolynomialMetric fixed = perturbed_metric(metric_from_theta(zero), kappa(s, pot.phi));
    TruncSeries res = scalar_curvature_series(fixed, 2) - TruncSeries::constant(4, Rational(1), 2);
    REQUIRE(res.is_zero());
}

TEST_CASE("solve_csc: surface-product fixtures reach constant curvature") {
    for (Kind kind : {Kind::Complex, Kind::Para}) {
        Structure s = standard_structure(4, kind);
        ThetaTensor th = surface_theta(kind);
        PolynomialMetric base = metric_from_theta(th);
        Point origin(4, Rational(0));
        Rational c = scalar_curvature_at(base, origin);
        REQUIRE(c == Rational(-2)); // matching target: the jet starts above degree 4

        Potential pot = solve_csc(th, c, 6);
        REQUIRE(pot.degree == 6);
        REQUIRE(pot.residual_zero_through == 2);
        require_zero_cauchy_data(pot.phi, 4);
        for (const auto& [e, cc] : pot.phi.terms()) {
            int deg = 0;
            for (int x : e) deg += x;
            REQUIRE(deg >= 5); // 4-jet of phi vanishes when c matches the origin
        }

        PolynomialMetric fixed = perturbed_metric(base, kappa(s, pot.phi));
        REQUIRE_NOTHROW(validate_metric(fixed));
        // origin curvature untouched, Kaehler form still closed
        REQUIRE(curvature_at(fixed, origin) == curvature_at(base, origin));
        for (const auto& poly : domega_polynomials(fixed)) REQUIRE(poly.is_zero());
        // and the residual really vanishes through N - 4
        TruncSeries res = scalar_curvature_series(fixed, 2) - TruncSeries::constant(4, c, 2);
        REQUIRE(res.is_zero());

        // determinism: a second run builds the identical jet
        REQUIRE(solve_csc(th, c, 6).phi == pot.phi);
    }
}

TEST_CASE("solve_csc: mismatched target forces a quartic term") {
    Structure s = standard_structure(4, Kind::Complex);
    ThetaTensor th = surface_theta(Kind::Complex);
    // origin scalar curvature is -2; ask for 0 instead, so the degree-0
    // residual -2 must be absorbed by the quartic normal term:
    // -2 + 24 * (-1/4) t = 0 gives t = -1/3
    Potential pot = solve_csc(th, Rational(0), 5);
    REQUIRE(pot.phi.coefficient({0, 0, 0, 4}) == Rational(-1, 3));
    require_zero_cauchy_data(pot.phi, 4);

    PolynomialMetric fixed = perturbed_metric(metric_from_theta(th), kappa(s, pot.phi));
    TruncSeries res = scalar_curvature_series(fixed, 1);
    REQUIRE(res.is_zero());
}

TEST_CASE("solve_csc: six-variable smoke") {
    Structure s = standard_structure(6, Kind::Para);
    Prng coeff(5150);
    Tensor4 acc(6);
    for (const auto& b : closed_theta_basis(s)) {
        Rational cv = coeff.rational(2, 2);
        if (!cv.is_zero()) acc += cv * b.t;
    }
    ThetaTensor th{s, std::move(acc)};
    PolynomialMetric base = metric_from_theta(th);
    Rational c = scalar_curvature_at(base, Point(6, Rational(0)));

    Potential pot = solve_csc(th, c, 5);
    REQUIRE(pot.residual_zero_through == 1);
    require_zero_cauchy_data(pot.phi, 6);
    TruncSeries res = scalar_curvature_series(perturbed_metric(base, kappa(s, pot.phi)), 1) -
                      TruncSeries::constant(6, c, 1);
    REQUIRE(res.is_zero());
}

TEST_CASE("solve_csc: rejections") {
    Structure s = standard_structure(4, Kind::Complex);
    ThetaTensor open = random_nonkernel_theta(s, 31337);
    REQUIRE_THROWS_AS(solve_csc(open, Rational(0), 6), NotInKernel);

    ThetaTensor zero{s, Tensor4(4)};
    REQUIRE_THROWS_AS(solve_csc(zero, Rational(0), 4), BadDimension);
}
