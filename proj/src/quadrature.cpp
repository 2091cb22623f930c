#include "lsglue/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lsglue {

void gauss_gegenbauer(double nu, int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_gegenbauer: need at least one node");
    // Monic three-term recurrence for the weight (1-t^2)^nu: diagonal zero by
    // symmetry, beta_k = k (k + 2 nu) / ((2k + 2 nu - 1)(2k + 2 nu + 1)).
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        double beta = k * (k + 2.0 * nu) / ((2.0 * k + 2.0 * nu - 1.0) * (2.0 * k + 2.0 * nu + 1.0));
        J(k, k - 1) = J(k - 1, k) = std::sqrt(beta);
    }
    double mu0 = std::sqrt(std::numbers::pi) * std::exp(std::lgamma(nu + 1.0) - std::lgamma(nu + 1.5));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        nodes[i] = es.eigenvalues()(i);
        double v0 = es.eigenvectors()(0, i);
        weights[i] = mu0 * v0 * v0;
    }
}

SphereQuadrature::SphereQuadrature(int d, double r, int order) : order_(order) {
    if (d < 1) throw std::invalid_argument("SphereQuadrature: d must be >= 1");
    if (r <= 0.0) throw std::invalid_argument("SphereQuadrature: radius must be positive");
    if (order < 1) throw std::invalid_argument("SphereQuadrature: order must be >= 1");

    const int n_circle = 2 * order;
    const double two_pi = 2.0 * std::numbers::pi;

    // Start from the circle factor (coordinates x_d, x_{d+1} in angle
    // terms), then fold in polar angles from the innermost outwards.
    struct Partial {
        std::vector<double> x;  // unit-sphere coordinates built so far (innermost last)
        double w;
    };
    std::vector<Partial> acc;
    acc.reserve(static_cast<std::size_t>(n_circle));
    for (int i = 0; i < n_circle; ++i) {
        double th = two_pi * i / n_circle;
        acc.push_back({{std::cos(th), std::sin(th)}, two_pi / n_circle});
    }

    for (int k = d - 1; k >= 1; --k) {
        double nu = (d - k - 1) / 2.0;
        std::vector<double> t, w;
        gauss_gegenbauer(nu, order, t, w);
        std::vector<Partial> next;
        next.reserve(acc.size() * t.size());
        for (const auto& p : acc)
            for (std::size_t i = 0; i < t.size(); ++i) {
                double s = std::sqrt(std::max(0.0, 1.0 - t[i] * t[i]));
                Partial q;
                q.x.reserve(p.x.size() + 1);
                q.x.push_back(t[i]);
                for (double c : p.x) q.x.push_back(s * c);
                q.w = p.w * w[i];
                next.push_back(std::move(q));
            }
        acc = std::move(next);
    }

    const double scale = std::pow(r, d);
    nodes_.reserve(acc.size());
    for (auto& p : acc) {
        QuadratureNode node;
        node.x.resize(p.x.size());
        for (std::size_t i = 0; i < p.x.size(); ++i) node.x[i] = r * p.x[i];
        node.w = p.w * scale;
        nodes_.push_back(std::move(node));
    }
}

double SphereQuadrature::integrate(const std::function<double(const std::vector<double>&)>& f) const {
    double acc = 0.0;
    for (const auto& node : nodes_) {
        double v = f(node.x);
        if (!std::isfinite(v)) throw std::domain_error("quadrature: non-finite sample value");
        acc += node.w * v;
    }
    return acc;
}

double quadrature_integrate(const std::function<double(const std::vector<double>&)>& f, int d,
                            double r, int order) {
    return SphereQuadrature(d, r, order).integrate(f);
}

}  // namespace lsglue
