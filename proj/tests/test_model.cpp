#include "lsglue/model.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace lsglue;

namespace {

ProductConfig reference_n4() {
    // S^2(1) x (dim 2, lambda1 = 3, Vol 7): n = 4, h = 1, u0 = 1.
    AbstractFactor f{2, 7.0, Rational(3), Rational(0)};
    return ProductConfig::make(SphereSpec::unit(2), f);
}

}  // namespace

TEST_CASE("dimension constants") {
    auto c6 = constants(6);
    CHECK(c6.two_star == 3);
    CHECK(c6.c_n == rational_of(1, 5));

    CHECK(omega(1).coeff == 2);
    CHECK(omega(1).pi_power == 1);
    CHECK(omega(2).coeff == 4);
    CHECK(omega(2).pi_power == 1);
    CHECK(omega(5).coeff == 1);
    CHECK(omega(5).pi_power == 3);
    CHECK(omega(0).coeff == 2);
    CHECK(omega(0).pi_power == 0);
    CHECK(omega(6).coeff == rational_of(16, 15));
    CHECK(omega(6).pi_power == 3);
    CHECK(omega(2).value() == doctest::Approx(4 * std::numbers::pi).epsilon(1e-15));

    CHECK_THROWS_AS(constants(2), ConfigError);

    // Independent oracle: omega_k = 2 pi^((k+1)/2) / Gamma((k+1)/2).
    for (int k = 0; k <= 12; ++k) {
        double expected = 2.0 * std::pow(std::numbers::pi, (k + 1) / 2.0) /
                          std::exp(std::lgamma((k + 1) / 2.0));
        CHECK(omega(k).value() == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("constant solution in product mode") {
    auto cfg = reference_n4();
    CHECK(cfg.n() == 4);
    CHECK(cfg.two_star() == 4);
    auto sol = constant_solution(cfg);
    CHECK(sol.h == 1);
    CHECK(sol.u0 == 1.0);
    REQUIRE(sol.u0_exact.has_value());
    CHECK(*sol.u0_exact == 1);

    // S^1(1) x S^2(1): n = 3, h = 1/4, u0 = (1/4)^(1/4).
    auto cfg3 = ProductConfig::make(SphereSpec::unit(1), AbstractFactor::sphere(2, 1));
    auto sol3 = constant_solution(cfg3);
    CHECK(sol3.h == rational_of(1, 4));
    CHECK(sol3.u0 == doctest::Approx(std::pow(0.25, 0.25)).epsilon(1e-15));
    CHECK(!sol3.u0_exact.has_value());
    // u0^2 = 1/2 exactly.
    CHECK(cfg3.u0_pow_exact(2).value() == rational_of(1, 2));
}

TEST_CASE("kernel basis") {
    auto cfg = reference_n4();
    auto kb = kernel_basis(cfg);
    CHECK(kb.dim == 3);
    CHECK(kb.degenerate);
    REQUIRE(kb.basis.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(kb.basis[i].components().size() == 1);
        CHECK(kb.basis[i].component(1) == HomPoly::coordinate(3, i));
    }

    // |phi|_h^2 = (lambda1 + h) Vol(M2) int phi^2: for phi = x1 on S^2(1),
    // (2 + 1) * 7 * (1/3) * 4 pi = 28 pi.
    CHECK(h_norm_sq(kb, {Rational(1), Rational(0), Rational(0)}) ==
          doctest::Approx(28 * std::numbers::pi).epsilon(1e-13));

    // The coupling-norm identity (2*-1) u0^(2*-2) = lambda1 + h, exact.
    CHECK((cfg.two_star() - 1) * cfg.u0_pow_exact(cfg.two_star() - 2).value() ==
          cfg.lambda1_sphere() + cfg.h());

    auto cfg3 = ProductConfig::make(SphereSpec::unit(1), AbstractFactor::sphere(2, 1));
    CHECK(kernel_basis(cfg3).dim == 2);

    // lambda1(M1) = lambda1(M2) is refused.
    auto bad = ProductConfig::make(SphereSpec::unit(2), AbstractFactor::sphere(2, 1));
    CHECK_THROWS_AS(kernel_basis(bad), HypothesisError);
    // lambda1(M1) > lambda1(M2) as well.
    AbstractFactor slow{2, 1.0, rational_of(1, 2), Rational(0)};
    auto bad2 = ProductConfig::make(SphereSpec::unit(2), slow);
    CHECK_THROWS_AS(kernel_basis(bad2), HypothesisError);
    // A custom coupling that does not place the kernel on the sphere factor.
    auto bad3 = ProductConfig::make(SphereSpec::unit(2), AbstractFactor{2, 7.0, Rational(3), Rational(0)},
                                    -1, HMode::CustomConstant, rational_of(7, 5));
    CHECK_THROWS_AS(kernel_basis(bad3), HypothesisError);
    // A custom coupling equal to the default is accepted.
    auto ok = ProductConfig::make(SphereSpec::unit(2), AbstractFactor{2, 7.0, Rational(3), Rational(0)},
                                  -1, HMode::CustomConstant, Rational(1));
    CHECK(kernel_basis(ok).dim == 3);
}

TEST_CASE("kernel orthogonality to the constant solution") {
    // u0 is orthogonal to the kernel: for constant u0 and degree-1 phi this
    // is the vanishing of the sphere average of phi.
    auto cfg = reference_n4();
    auto kb = kernel_basis(cfg);
    for (const auto& phi : kb.basis) CHECK(sphere_average(phi) == 0);
}

TEST_CASE("second variation") {
    CHECK(second_variation_check(reference_n4()).nonnegative);
    CHECK(second_variation_check(reference_n4()).kernel_dim == 3);

    auto pure = ProductConfig::make(SphereSpec::unit(4), AbstractFactor::point());
    auto sv = second_variation_check(pure);
    CHECK(sv.nonnegative);
    CHECK(sv.kernel_dim == 5);
    CHECK(kernel_basis(pure).dim == 5);
}

TEST_CASE("yamabe product construction") {
    // N = S^2(1): dim 2, R = 2, lambda1 = 2; d = 1 gives r0 = 1, n = 3.
    auto N = AbstractFactor::sphere(2, 1);
    auto cfg = yamabe_product(N, 1);
    CHECK(cfg.n() == 3);
    CHECK(cfg.sphere().r2 == 1);
    CHECK(cfg.h_mode() == HMode::YamabeCoupling);
    CHECK(cfg.scalar_curvature() == 2);
    CHECK(cfg.h() == rational_of(1, 4));
    CHECK(cfg.h() == cfg.lambda1_sphere() / (cfg.two_star() - 2));

    // Hypothesis 2 < 2 * 2 holds; a factor with R >= dim * lambda1 is refused.
    AbstractFactor badN{2, 1.0, Rational(1), Rational(2)};
    CHECK_THROWS_AS(yamabe_product(badN, 1), HypothesisError);
    AbstractFactor flatN{2, 1.0, Rational(1), Rational(0)};
    CHECK_THROWS_AS(yamabe_product(flatN, 1), HypothesisError);

    // Irrational radius: N = S^2(1) with d = 2 gives r0^2 = 2.
    auto cfg2 = yamabe_product(N, 2);
    CHECK(cfg2.sphere().r2 == 2);
    CHECK(cfg2.h() == cfg2.lambda1_sphere() / (cfg2.two_star() - 2));
}

TEST_CASE("configuration validation") {
    CHECK_THROWS_AS(ProductConfig::make(SphereSpec::unit(1), AbstractFactor::point()), ConfigError);
    AbstractFactor f{2, -1.0, Rational(3), Rational(0)};
    CHECK_THROWS_AS(ProductConfig::make(SphereSpec::unit(2), f), ConfigError);
    AbstractFactor p = AbstractFactor::point();
    p.volume = 2.0;
    CHECK_THROWS_AS(ProductConfig::make(SphereSpec::unit(3), p), ConfigError);
    CHECK_THROWS_AS(ProductConfig::make(SphereSpec::unit(2), AbstractFactor{2, 7.0, Rational(3), Rational(0)}, 2),
                    ConfigError);
}
