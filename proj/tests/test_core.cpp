#include <catch2/catch_amalgamated.hpp>

#include <kcm/model.hpp>
#include <kcm/prng.hpp>
#include <kcm/structure.hpp>
#include <kcm/tensor.hpp>

#include <array>
#include <set>
#include <vector>

using namespace kcm;

namespace {

Mat<Rational> transpose(const Mat<Rational>& a) {
    Mat<Rational> t(a.cols, a.rows);
    for (int r = 0; r < a.rows; ++r)
        for (int c = 0; c < a.cols; ++c) t.at(c, r) = a.at(r, c);
    return t;
}

int reduced_rank(const std::vector<Tensor4>& basis) {
    if (basis.empty()) return 0;
    auto first = to_reduced(basis.front());
    Mat<Rational> m(static_cast<int>(basis.size()), static_cast<int>(first.size()));
    for (int r = 0; r < m.rows; ++r) {
        auto v = to_reduced(basis[static_cast<std::size_t>(r)]);
        for (int c = 0; c < m.cols; ++c) m.at(r, c) = v[static_cast<std::size_t>(c)];
    }
    return rref(m).rank;
}

} // namespace

TEST_CASE("standard structures satisfy their defining identities") {
    for (Kind kind : {Kind::Complex, Kind::Para}) {
        for (int m : {4, 6, 8}) {
            Structure s = standard_structure(m, kind);
            REQUIRE(s.m == m);
            REQUIRE(s.mbar == m / 2);
            REQUIRE(s.sigma == (kind == Kind::Complex ? 1 : -1));

            // J^2 = -id (complex), +id (para), both via the signed
            // permutation data and via the assembled matrix.
            Mat<Rational> J = s.j_matrix();
            Mat<Rational> J2 = J * J;
            for (int i = 0; i < m; ++i) {
                REQUIRE(s.jp(s.jp(i)) == i);
                int square = s.js(i) * s.js(s.jp(i));
                REQUIRE(square == (kind == Kind::Complex ? -1 : 1));
                for (int j = 0; j < m; ++j) {
                    Rational want = (i == j) ? Rational(kind == Kind::Complex ? -1 : 1) : Rational(0);
                    REQUIRE(J2.at(i, j) == want);
                }
            }

            // g0(Jx, Jy) = g0(x,y) complex, = -g0(x,y) para: J^T g0 J = +-g0.
            Mat<Rational> g0 = s.g0_matrix();
            Mat<Rational> lhs = transpose(J) * (g0 * J);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    Rational want = g0.at(i, j);
                    if (kind == Kind::Para) want = -want;
                    REQUIRE(lhs.at(i, j) == want);
                }

            // signature bookkeeping
            int neg = 0;
            for (int i = 0; i < m; ++i)
                if (s.eps(i) < 0) ++neg;
            REQUIRE(neg == (kind == Kind::Complex ? 0 : m / 2));
        }
    }
    REQUIRE_THROWS_AS(standard_structure(3, Kind::Complex), BadDimension);
    REQUIRE_THROWS_AS(standard_structure(5, Kind::Para), BadDimension);
    REQUIRE_THROWS_AS(standard_structure(2, Kind::Complex), BadDimension);
    REQUIRE_THROWS_AS(standard_structure(0, Kind::Para), BadDimension);
}

TEST_CASE("canonical quadruples index the symmetry orbits") {
    for (int m : {4, 6}) {
        auto reps = curvature_reps(m);
        int npairs = m * (m - 1) / 2;
        REQUIRE(static_cast<int>(reps.size()) == npairs * (npairs + 1) / 2);
        // 21 reduced coordinates at m=4, 120 at m=6
        REQUIRE(static_cast<int>(reps.size()) == (m == 4 ? 21 : 120));

        // rep_position is the exact inverse of the enumeration
        for (int p = 0; p < static_cast<int>(reps.size()); ++p)
            REQUIRE(rep_position(m, reps[static_cast<std::size_t>(p)]) == p);

        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k)
                    for (int l = 0; l < m; ++l) {
                        auto c = canonical_quadruple(i, j, k, l);
                        // the orbit collapses to zero exactly when a pair repeats
                        REQUIRE(c.forced_zero == (i == j || k == l));
                        if (c.forced_zero) continue;
                        REQUIRE(c.rep[0] < c.rep[1]);
                        REQUIRE(c.rep[2] < c.rep[3]);
                        int pos = rep_position(m, c.rep);
                        REQUIRE(pos >= 0);
                        REQUIRE(pos < static_cast<int>(reps.size()));
                        REQUIRE(reps[static_cast<std::size_t>(pos)] == c.rep);
                        REQUIRE((c.sign == 1 || c.sign == -1));
                    }
    }
}

TEST_CASE("reduced coordinates expand to pair-symmetric tensors and round-trip") {
    for (int m : {4, 6}) {
        Prng rng(20240812);
        auto reps = curvature_reps(m);
        std::vector<Rational> vals;
        vals.reserve(reps.size());
        for (std::size_t t = 0; t < reps.size(); ++t) vals.push_back(rng.rational(9, 5));

        Tensor4 t = tensor_from_reduced(m, vals);
        REQUIRE(to_reduced(t) == vals);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k)
                    for (int l = 0; l < m; ++l) {
                        REQUIRE(t.at(i, j, k, l) == -t.at(j, i, k, l));
                        REQUIRE(t.at(i, j, k, l) == -t.at(i, j, l, k));
                        REQUIRE(t.at(i, j, k, l) == t.at(k, l, i, j));
                    }
    }
}

TEST_CASE("the one-orbit surface model has exactly the four determined entries") {
    Structure s = standard_structure(4, Kind::Complex);
    CurvatureModel mod = model_from_components(s, {{1, 2, 2, 1, Rational(1)}});
    const Tensor4& a = mod.a;

    REQUIRE(a.at(0, 1, 1, 0) == Rational(1));
    REQUIRE(a.at(1, 0, 0, 1) == Rational(1));
    REQUIRE(a.at(0, 1, 0, 1) == Rational(-1));
    REQUIRE(a.at(1, 0, 1, 0) == Rational(-1));

    int nonzero = 0;
    for (const auto& v : a.a)
        if (!v.is_zero()) ++nonzero;
    REQUIRE(nonzero == 4);

    REQUIRE_NOTHROW(validate_curvature_tensor(a));

    // eps-weighted self-pairing: all four entries are +-1 with weight +1
    REQUIRE(tensor_ip(a, a, s) == Rational(4));
    // ... in the para signature the weights at those slots are also +1
    Structure sp = standard_structure(4, Kind::Para);
    REQUIRE(tensor_ip(a, a, sp) == Rational(4));

    // writer emits the lexicographically least representative of the orbit
    auto comps = model_components(a);
    REQUIRE(comps.size() == 1);
    REQUIRE(comps[0].i == 1);
    REQUIRE(comps[0].j == 2);
    REQUIRE(comps[0].k == 1);
    REQUIRE(comps[0].l == 2);
    REQUIRE(comps[0].v == Rational(-1));

    CurvatureModel again = model_from_components(s, comps);
    REQUIRE(again.a == a);

    REQUIRE_NOTHROW(model_from_tensor(s, a));
}

TEST_CASE("component lists that break the symmetries are rejected") {
    Structure s = standard_structure(4, Kind::Complex);

    // repeated pair index: the orbit forces the value to zero
    REQUIRE_THROWS_AS(model_from_components(s, {{1, 1, 2, 2, Rational(1)}}), SymmetryConflict);
    // an explicitly zero entry on such an orbit is fine
    REQUIRE_NOTHROW(model_from_components(s, {{1, 1, 2, 2, Rational(0)}}));

    // two entries of one orbit with incompatible values
    REQUIRE_THROWS_AS(model_from_components(s, {{1, 2, 2, 1, Rational(1)}, {2, 1, 2, 1, Rational(1)}}),
                      SymmetryConflict);
    // ... and with the compatible value they coexist
    REQUIRE_NOTHROW(model_from_components(s, {{1, 2, 2, 1, Rational(1)}, {2, 1, 2, 1, Rational(-1)}}));

    // a lone all-distinct component violates the first Bianchi identity ...
    REQUIRE_THROWS_AS(model_from_components(s, {{1, 2, 3, 4, Rational(1)}}), BianchiViolation);
    // ... until the other two all-distinct orbits balance the cyclic sum
    REQUIRE_NOTHROW(model_from_components(
        s, {{1, 2, 3, 4, Rational(2)}, {1, 3, 2, 4, Rational(1)}, {1, 4, 2, 3, Rational(-1)}}));

    REQUIRE_THROWS_AS(model_from_components(s, {{0, 2, 3, 4, Rational(1)}}), ParseError);
    REQUIRE_THROWS_AS(model_from_components(s, {{1, 2, 3, 5, Rational(1)}}), ParseError);

    // dense-tensor validation catches a broken interchange symmetry
    Tensor4 bad(4);
    bad.at(0, 1, 2, 3) = Rational(1);
    REQUIRE_THROWS_AS(model_from_tensor(s, bad), SymmetryConflict);
}

TEST_CASE("curvature tensor space has dimension m^2(m^2-1)/12") {
    for (int m : {4, 6}) {
        auto basis = curvature_tensor_basis(m);
        int dim = m * m * (m * m - 1) / 12;
        REQUIRE(static_cast<int>(basis.size()) == dim);
        REQUIRE(reduced_rank(basis) == dim);
        for (const auto& b : basis) REQUIRE_NOTHROW(validate_curvature_tensor(b));
    }
}

TEST_CASE("random span elements of the curvature basis satisfy the symmetries") {
    auto basis = curvature_tensor_basis(4);
    Prng rng(77);
    for (int trial = 0; trial < 5; ++trial) {
        Tensor4 acc(4);
        for (const auto& b : basis) acc += rng.rational(5, 3) * b;
        REQUIRE_NOTHROW(validate_curvature_tensor(acc));
    }
}
