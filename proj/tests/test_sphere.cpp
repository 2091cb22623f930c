#include "lsglue/sphere.hpp"

#include "doctest.h"

#include <random>

using namespace lsglue;

namespace {

MultiIndex idx(std::initializer_list<int> v) { return MultiIndex(v); }

HomPoly random_poly(std::mt19937_64& rng, int dim, int degree) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 6), pick(0, dim - 1);
    HomPoly p(dim, degree);
    for (int t = 0; t < 2 * dim; ++t) {
        MultiIndex a(dim, 0);
        for (int used = 0; used < degree; ++used) a[pick(rng)] += 1;
        p.add_term(a, rational_of(num(rng), den(rng)));
    }
    return p;
}

std::vector<Rational> random_direction(std::mt19937_64& rng, int dim) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    std::vector<Rational> c(dim);
    bool nonzero = false;
    for (auto& ci : c) {
        ci = rational_of(num(rng), den(rng));
        if (ci != 0) nonzero = true;
    }
    if (!nonzero) c[0] = 1;
    return c;
}

}  // namespace

TEST_CASE("sphere eigenvalues") {
    for (int d = 1; d <= 6; ++d) {
        auto s = SphereSpec::unit(d);
        CHECK(eigenvalue(0, s) == 0);
        CHECK(eigenvalue(1, s) == d);
        CHECK(eigenvalue(2, s) == 2 * (d + 1));
        for (int k = 0; k < 8; ++k) CHECK(eigenvalue(k, s) < eigenvalue(k + 1, s));
    }
    auto s = SphereSpec::with_radius(2, rational_of(3, 2));
    CHECK(eigenvalue(1, s) == Rational(2) / rational_of(9, 4));
}

TEST_CASE("restriction of polynomials") {
    auto s2 = SphereSpec::unit(2);

    auto f1 = restrict_to_sphere(HomPoly::coordinate(3, 0), s2);
    REQUIRE(f1.components().size() == 1);
    CHECK(f1.component(1) == HomPoly::coordinate(3, 0));

    auto x1sq = HomPoly::monomial(3, idx({2, 0, 0}), 1);
    auto f2 = restrict_to_sphere(x1sq, s2);
    REQUIRE(f2.components().size() == 2);
    CHECK(f2.component(2) == x1sq - HomPoly::radius_squared(3) * rational_of(1, 3));
    CHECK(f2.component(0) == HomPoly::constant(3, rational_of(1, 3)));

    for (int d = 1; d <= 4; ++d) {
        auto sr = SphereSpec::with_radius(d, rational_of(5, 3));
        auto fr = restrict_to_sphere(HomPoly::radius_squared(d + 1), sr);
        REQUIRE(fr.components().size() == 1);
        CHECK(fr.component(0) == HomPoly::constant(d + 1, sr.r2));
    }
}

TEST_CASE("pointwise products") {
    auto s2 = SphereSpec::unit(2);
    auto x1 = restrict_to_sphere(HomPoly::coordinate(3, 0), s2);
    auto one = SphereFunction::constant(s2, 1);

    CHECK(pointwise_multiply(x1, one) == x1);

    auto sq = pointwise_multiply(x1, x1);
    CHECK(sq == restrict_to_sphere(HomPoly::monomial(3, idx({2, 0, 0}), 1), s2));

    // Components of any product are pairwise L2-orthogonal.
    std::mt19937_64 rng(5);
    auto p = restrict_to_sphere(random_poly(rng, 3, 3), s2);
    auto q = restrict_to_sphere(random_poly(rng, 3, 2), s2);
    auto prod = pointwise_multiply(p, q);
    for (auto it = prod.components().begin(); it != prod.components().end(); ++it)
        for (auto jt = std::next(it); jt != prod.components().end(); ++jt) {
            auto a = project_component(prod, it->first);
            auto b = project_component(prod, jt->first);
            CHECK(l2_inner(a, b) == 0);
        }

    auto other = restrict_to_sphere(HomPoly::coordinate(4, 0), SphereSpec::unit(3));
    CHECK_THROWS_AS(pointwise_multiply(x1, other), std::invalid_argument);
}

TEST_CASE("L2 pairing values") {
    auto s2 = SphereSpec::unit(2);
    auto x1 = restrict_to_sphere(HomPoly::coordinate(3, 0), s2);
    auto x2 = restrict_to_sphere(HomPoly::coordinate(3, 1), s2);
    CHECK(l2_inner(x1, x2) == 0);
    CHECK(l2_inner(x1, x1) == rational_of(1, 3));
    auto x1sq = pointwise_multiply(x1, x1);
    CHECK(l2_inner(x1sq, x1sq) == rational_of(1, 5));
}

TEST_CASE("component projection") {
    auto s2 = SphereSpec::unit(2);
    auto f = restrict_to_sphere(HomPoly::monomial(3, idx({2, 0, 0}), 1), s2);
    auto p0 = project_component(f, 0);
    CHECK(p0 == SphereFunction::constant(s2, rational_of(1, 3)));
    CHECK(project_component(p0, 0) == p0);

    SphereFunction rest = f;
    for (const auto& [k, h] : f.components()) rest = rest - project_component(f, k);
    CHECK(rest.is_zero());
}

TEST_CASE("shifted resolvent: sphere identity for first-eigenspace squares") {
    // For degree-1 phi on S^d(1), with lambda1 = d and lambda2 = 2(d+1):
    // (Lap - lambda1)^{-1}(phi^2) =
    //     (phi^2 + lambda2 LapEucl(phi^2) / (2(d+1) lambda1)) / (lambda2 - lambda1),
    // an exact identity of rational sphere functions.
    std::mt19937_64 rng(17);
    for (int d = 1; d <= 6; ++d) {
        auto s = SphereSpec::unit(d);
        Rational lam1 = eigenvalue(1, s), lam2 = eigenvalue(2, s);
        for (int trial = 0; trial < 3; ++trial) {
            auto c = random_direction(rng, d + 1);
            auto phi_poly = HomPoly::linear(d + 1, c);
            auto phi_sq_poly = multiply(phi_poly, phi_poly);

            auto lhs = resolvent_shifted(restrict_to_sphere(phi_sq_poly, s), lam1);

            auto lap = laplacian_euclidean(phi_sq_poly);  // degree-0 polynomial
            Rational lap_value = lap.coeff(MultiIndex(d + 1, 0));
            auto rhs = (restrict_to_sphere(phi_sq_poly, s) +
                        SphereFunction::constant(s, lam2 * lap_value / (2 * (d + 1) * lam1))) *
                       (Rational(1) / (lam2 - lam1));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("shifted resolvent: edge cases and properties") {
    auto s = SphereSpec::unit(3);
    Rational lam1 = eigenvalue(1, s);

    auto one = SphereFunction::constant(s, 1);
    CHECK(resolvent_shifted(one, lam1) == SphereFunction::constant(s, rational_of(-1, 3)));

    auto x1 = restrict_to_sphere(HomPoly::coordinate(4, 0), s);
    CHECK_THROWS_AS(resolvent_shifted(x1, lam1), ResolventError);
    try {
        resolvent_shifted(x1, lam1);
    } catch (const ResolventError& e) {
        CHECK(e.offending_degree == 1);
    }

    // (Lap - lambda) o resolvent = identity on valid inputs; linearity;
    // self-adjointness of the resolvent in the L2 pairing.
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 4; ++trial) {
        auto f = restrict_to_sphere(random_poly(rng, 4, 4), s);
        auto g = restrict_to_sphere(random_poly(rng, 4, 2), s);
        f = f - project_component(f, 1);
        g = g - project_component(g, 1);

        auto rf = resolvent_shifted(f, lam1);
        CHECK(laplace_beltrami(rf) - rf * lam1 == f);

        auto sum = resolvent_shifted(f + g, lam1);
        CHECK(sum == resolvent_shifted(f, lam1) + resolvent_shifted(g, lam1));

        CHECK(l2_inner(rf, g) == l2_inner(f, resolvent_shifted(g, lam1)));
    }
}

TEST_CASE("spectral Laplacian agrees with the ambient formula") {
    // For homogeneous p of degree m: Lap_sphere(p|_S) =
    //   (LapEucl p)|_S + m(m+d-1)/r^2 (p|_S), with the geometric sign.
    std::mt19937_64 rng(29);
    for (int d : {2, 3}) {
        auto s = SphereSpec::with_radius(d, rational_of(4, 3));
        for (int m : {2, 3, 4, 5}) {
            auto p = random_poly(rng, d + 1, m);
            auto spectral = laplace_beltrami(restrict_to_sphere(p, s));
            auto ambient = restrict_to_sphere(laplacian_euclidean(p), s) +
                           restrict_to_sphere(p, s) * (Rational(m) * Rational(m + d - 1) / s.r2);
            CHECK(spectral == ambient);
        }
    }
}

TEST_CASE("power integrals agree with the spectral product route") {
    std::mt19937_64 rng(41);
    for (int d : {1, 2, 3}) {
        auto s = SphereSpec::with_radius(d, d == 2 ? rational_of(3, 2) : Rational(1));
        SphereFunction f(s);
        f = restrict_to_sphere(random_poly(rng, d + 1, 3), s) +
            restrict_to_sphere(random_poly(rng, d + 1, 2), s) +
            SphereFunction::constant(s, rational_of(1, 2));
        for (int p : {0, 1, 2, 3, 4}) {
            SphereFunction pw = SphereFunction::constant(s, 1);
            for (int i = 0; i < p; ++i) pw = pointwise_multiply(pw, f);
            CHECK(power_integral_volume_units(f, p) == sphere_average(pw));
        }
    }
}

TEST_CASE("radius bookkeeping with irrational radius") {
    auto s = SphereSpec::with_radius_squared(2, 2);  // r = sqrt(2)
    CHECK(!s.radius_exact().has_value());
    CHECK(eigenvalue(1, s) == 1);
    auto f = restrict_to_sphere(HomPoly::radius_squared(3), s);
    CHECK(f.component(0) == HomPoly::constant(3, 2));
    CHECK(SphereSpec::with_radius(2, rational_of(3, 2)).radius_exact().value() == rational_of(3, 2));
}
