#pragma once

// Deterministic tensor-product quadrature on round spheres S^d(r), the
// floating-point oracle for integrands that leave the polynomial layer
// (fractional powers |u|^p with non-integer p).
//
// Construction: spherical coordinates with d-1 polar angles and one periodic
// angle. Polar angle k carries the measure sin^(d-k) dtheta; substituting
// t = cos(theta) gives the weight (1-t^2)^((d-k-1)/2) on [-1,1], handled by
// the Gauss rule for that weight (Gauss-Legendre when the exponent is zero,
// i.e. for S^2; Gauss-Gegenbauer otherwise). The periodic angle uses the
// trapezoid rule with 2*order equispaced nodes.
//
// Exactness: polynomials on the sphere of total degree <= 2*order - 1 are
// integrated exactly (each polar factor is a Gauss rule of that degree; the
// periodic factor is exact for trigonometric degree <= 2*order - 1).

#include <functional>
#include <vector>

namespace lsglue {

struct QuadratureNode {
    std::vector<double> x;  // ambient point on S^d(r)
    double w = 0.0;         // absolute weight, includes the r^d scale
};

class SphereQuadrature {
public:
    SphereQuadrature(int d, double r, int order);

    const std::vector<QuadratureNode>& nodes() const { return nodes_; }
    int order() const { return order_; }
    int exactness_degree() const { return 2 * order_ - 1; }

    /// Throws std::domain_error on a non-finite sample value.
    double integrate(const std::function<double(const std::vector<double>&)>& f) const;

private:
    int order_;
    std::vector<QuadratureNode> nodes_;
};

/// One-shot helper matching the operation signature.
double quadrature_integrate(const std::function<double(const std::vector<double>&)>& f, int d,
                            double r, int order);

/// Gauss nodes/weights on [-1,1] for the weight (1-t^2)^nu, nu >= 0
/// (Golub-Welsch on the Jacobi matrix). Exposed for tests.
void gauss_gegenbauer(double nu, int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace lsglue
