#include "lsglue/series.hpp"

#include <cmath>
#include <stdexcept>

namespace lsglue {

TaylorCoeffs taylor_coeffs(double u0, double two_star, int L_max) {
    if (u0 <= 0.0) throw ConfigError("taylor_coeffs: u0 must be positive");
    if (L_max < 2) throw ConfigError("taylor_coeffs: L_max must be >= 2");
    TaylorCoeffs tc;
    tc.two_star = two_star;
    tc.u0 = u0;
    tc.a.resize(L_max + 1);
    for (int k = 0; k <= L_max; ++k) {
        double prod = 1.0, fact = 1.0;
        for (int i = 1; i <= k; ++i) {
            prod *= two_star - i;
            fact *= i;
        }
        tc.a[k] = std::pow(u0, two_star - 1 - k) * prod / fact;
    }
    return tc;
}

std::vector<Rational> reduced_taylor_coeffs(const Rational& h, const Rational& two_star, int L_max) {
    std::vector<Rational> a(L_max + 1);
    for (int k = 0; k <= L_max; ++k) {
        Rational prod = 1, fact = 1;
        for (int i = 1; i <= k; ++i) {
            prod *= two_star - i;
            fact *= i;
        }
        a[k] = h * prod / fact;
    }
    return a;
}

namespace {

void enumerate_compositions(int k, int L, int j, int l, std::vector<int>& r, int sum_r, int sum_lr,
                            std::vector<MultinomialTerm>& out) {
    if (l == L) {
        if (sum_r == k && sum_lr == j) {
            Rational coeff = 1;
            for (int i = 2; i <= k; ++i) coeff *= i;
            for (int rl : r) {
                Rational f = 1;
                for (int i = 2; i <= rl; ++i) f *= i;
                coeff /= f;
            }
            out.push_back(MultinomialTerm{r, coeff});
        }
        return;
    }
    const int weight = l + 1;  // r[l] multiplies X_{l+1}
    for (int rl = 0; rl + sum_r <= k && rl * weight + sum_lr <= j; ++rl) {
        r[l] = rl;
        enumerate_compositions(k, L, j, l + 1, r, sum_r + rl, sum_lr + rl * weight, out);
    }
    r[l] = 0;
}

}  // namespace

std::vector<MultinomialTerm> multinomial_Q(int k, int L, int j) {
    if (k < 1 || L < 1) throw std::invalid_argument("multinomial_Q: k, L must be >= 1");
    std::vector<MultinomialTerm> out;
    if (j < k || j > L * k) return out;  // vanishes outside [k, Lk]
    std::vector<int> r(L, 0);
    enumerate_compositions(k, L, j, 0, r, 0, 0, out);
    return out;
}

SeriesExpansion::SeriesExpansion(const ProductConfig& cfg, std::vector<Rational> direction, int L_max)
    : cfg_(cfg), direction_(std::move(direction)), L_max_(L_max) {
    if (L_max < 2) throw ConfigError("SeriesExpansion: L_max must be >= 2");
    if (static_cast<int>(direction_.size()) != cfg.sphere().ambient_dim())
        throw ConfigError("SeriesExpansion: direction length must be d + 1");
    kernel_basis(cfg);  // validates kernel admissibility

    const SphereSpec& s = cfg.sphere();
    const Rational lam1 = cfg.lambda1_sphere();
    const auto a = reduced_taylor_coeffs(cfg.h(), cfg.two_star(), L_max);

    reduced_.resize(L_max + 1, SphereFunction::zero(s));
    reduced_[1] = linear_restriction(s, direction_);

    // Cached powers of the computed terms: pow_cache[l][e] = Pi_l^e.
    std::vector<std::vector<SphereFunction>> pow_cache(
        L_max + 1, std::vector<SphereFunction>{SphereFunction::constant(s, 1)});
    auto power_of = [&](int l, int e) -> const SphereFunction& {
        auto& cache = pow_cache[l];
        while (static_cast<int>(cache.size()) <= e)
            cache.push_back(pointwise_multiply(cache.back(), reduced_[l]));
        return cache[e];
    };

    for (int L = 2; L <= L_max; ++L) {
        SphereFunction rhs(s);
        for (int k = 2; k <= L; ++k) {
            if (a[k] == 0) continue;
            for (const auto& term : multinomial_Q(k, L, L)) {
                // Since k >= 2 and sum l r_l = L, the slot for X_L is never
                // used: the right-hand side only involves P_1..P_{L-1}.
                if (term.exponents[L - 1] != 0)
                    throw std::logic_error("series recursion referenced its own unknown");
                SphereFunction prod = SphereFunction::constant(s, 1);
                for (int l = 1; l < L; ++l)
                    if (term.exponents[l - 1] > 0)
                        prod = pointwise_multiply(prod, power_of(l, term.exponents[l - 1]));
                Rational scalar = a[k] * term.coeff;
                rhs = rhs + prod * scalar;
            }
        }
        // Inverting the projected linearization componentwise: applying
        // (Lap + h)^{-1} multiplies the eigencomponent at lambda_j by
        // 1/(lambda_j + h), and the linearized operator
        //   L0 psi = Pi(psi - (Lap + h)^{-1}((2*-1) h psi))
        // acts there by (lambda_j - (2*-2) h)/(lambda_j + h). Composing the
        // two inverses gives
        //   1/(lambda_j + h) * (lambda_j + h)/(lambda_j - lambda1)
        //     = 1/(lambda_j - lambda1),
        // using (2*-2) h = lambda1. The degree-1 component is removed by the
        // kernel projection, so the division below never hits lambda1.
        SphereFunction PL(s);
        for (const auto& [j, hcomp] : rhs.components()) {
            if (j == 1) continue;
            Rational gap = eigenvalue(j, s) - lam1;
            PL.add_component(j, hcomp * (Rational(1) / gap));
        }
        if (PL.max_degree() > L)
            throw std::logic_error("series recursion produced degree above L");
        reduced_[L] = std::move(PL);
    }
}

double SeriesExpansion::term_scale(int L) const { return cfg_.u0_pow(Rational(1 - L)); }

std::optional<Rational> SeriesExpansion::term_scale_exact(int L) const {
    return cfg_.u0_pow_exact(Rational(1 - L));
}

double SeriesExpansion::term_l2_norm(int L) const {
    double vol = product_volume(cfg_);
    return std::abs(term_scale(L)) * std::sqrt(to_double(l2_norm_sq(reduced_.at(L))) * vol);
}

ScaledFn compute_P(const ProductConfig& cfg, const std::vector<Rational>& direction, int L) {
    if (L < 2) throw ConfigError("compute_P: L must be >= 2");
    SeriesExpansion series(cfg, direction, L);
    return ScaledFn{series.term_scale(L), series.reduced(L)};
}

double ScaledSum::evaluate(const std::vector<double>& x) const {
    double acc = 0.0;
    for (const auto& [c, f] : terms) acc += c * f.evaluate(x);
    return acc;
}

SphereFunctionD ScaledSum::collapse() const {
    SphereFunctionD out(sphere);
    for (const auto& [c, f] : terms) {
        if (c == 0.0) continue;
        auto fd = f.to_double_function();
        for (const auto& [k, h] : fd.components()) out.add_component(k, h * c);
    }
    return out;
}

ScaledSum u_truncated(const SeriesExpansion& series, double t) {
    const auto& cfg = series.config();
    ScaledSum u{cfg.sphere(), {}};
    u.terms.emplace_back(cfg.u0(), SphereFunction::constant(cfg.sphere(), 1));
    double tp = 1.0;
    for (int L = 1; L <= series.L_max(); ++L) {
        tp *= t;
        u.terms.emplace_back(tp * series.term_scale(L), series.reduced(L));
    }
    return u;
}

bool series_is_exact(const SeriesExpansion& series) {
    return series.config().u0_exact().has_value();
}

SphereFunction u_truncated_exact(const SeriesExpansion& series, const Rational& t) {
    const auto& cfg = series.config();
    auto u0 = cfg.u0_exact();
    if (!u0) throw std::domain_error("u_truncated_exact: u0 is not exactly representable");
    SphereFunction u = SphereFunction::constant(cfg.sphere(), *u0);
    Rational tp = 1;
    for (int L = 1; L <= series.L_max(); ++L) {
        tp *= t;
        Rational scale = tp * series.term_scale_exact(L).value();
        u = u + series.reduced(L) * scale;
    }
    return u;
}

GlueingEval glueing_eval(const ProductConfig& cfg, const std::vector<Rational>& direction, int L_max) {
    SeriesExpansion series(cfg, direction, L_max);
    GlueingEval ge{series, u_truncated(series, 1.0), {}};
    ge.norm_decay.reserve(L_max);
    for (int L = 1; L <= L_max; ++L) ge.norm_decay.push_back(ge.series.term_l2_norm(L));
    return ge;
}

namespace {

template <class K>
K residual_norm_sq_impl(const SphereFunctionT<K>& u, const ProductConfig& cfg,
                        const std::vector<K>& power_coeffs, const K& u0) {
    const SphereSpec& s = cfg.sphere();
    // f(u) = sum_k c_k (u - u0)^k with either the exact integer power
    // (terminating series) or the Taylor expansion to the working order.
    SphereFunctionT<K> delta = u - SphereFunctionT<K>::constant(s, u0);
    SphereFunctionT<K> fu(s);
    SphereFunctionT<K> power = SphereFunctionT<K>::constant(s, K(1));
    for (std::size_t k = 0; k < power_coeffs.size(); ++k) {
        if (k > 0) power = pointwise_multiply(power, delta);
        if (!detail::is_zero_coeff(power_coeffs[k])) fu = fu + power * power_coeffs[k];
    }
    SphereFunctionT<K> inv(s);
    const Rational h = cfg.h();
    for (const auto& [j, hcomp] : fu.components()) {
        Rational denom = eigenvalue(j, s) + h;
        inv.add_component(j, hcomp * (K(1) / detail::coeff_cast(denom, K())));
    }
    SphereFunctionT<K> res = u - inv;
    res = res - project_component(res, 1);
    return l2_norm_sq(res);
}

}  // namespace

Rational residual_projected_norm_sq_exact(const SeriesExpansion& series, const Rational& t) {
    const auto& cfg = series.config();
    Rational two_star = cfg.two_star();
    if (two_star.get_den() != 1)
        throw std::domain_error("exact residual requires an integer critical exponent");
    auto u0 = cfg.u0_exact();
    if (!u0) throw std::domain_error("exact residual requires exactly representable u0");
    long m = two_star.get_num().get_si() - 1;
    // (u0 + delta)^m expanded binomially in delta.
    std::vector<Rational> coeffs(m + 1);
    for (long k = 0; k <= m; ++k) {
        Rational binom = 1;
        for (long i = 0; i < k; ++i) binom = binom * Rational(m - i) / Rational(i + 1);
        coeffs[k] = binom * pow_int(*u0, m - k);
    }
    SphereFunction u = u_truncated_exact(series, t);
    return residual_norm_sq_impl<Rational>(u, cfg, coeffs, *u0);
}

double residual_projected_norm_sq(const SeriesExpansion& series, double t) {
    const auto& cfg = series.config();
    const double u0 = cfg.u0();
    const double two_star = to_double(cfg.two_star());
    int K_order = series.L_max() + 3;
    if (cfg.two_star().get_den() == 1)
        K_order = std::max<int>(K_order, static_cast<int>(cfg.two_star().get_num().get_si()) - 1);
    std::vector<double> coeffs(K_order + 1);
    for (int k = 0; k <= K_order; ++k) {
        double prod = 1.0, fact = 1.0;
        for (int i = 1; i <= k; ++i) {
            prod *= (two_star - 1) - (i - 1);
            fact *= i;
        }
        coeffs[k] = std::pow(u0, (two_star - 1) - k) * prod / fact;
    }
    SphereFunctionD u = u_truncated(series, t).collapse();
    return residual_norm_sq_impl<double>(u, cfg, coeffs, u0);
}

}  // namespace lsglue
