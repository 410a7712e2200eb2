#pragma once

#include <functional>
#include <vector>

#include "deformkernel/surface.hpp"

namespace dk {

/// Adaptive Simpson quadrature on [a, b] to absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 48);
Complex adaptive_simpson_c(const std::function<Complex(double)>& f, double a, double b,
                           double tol, int max_depth = 48);

/// Nodes and weights of the n-point Gauss-Laguerre rule for
/// int_0^inf g(u) e^{-u} du, computed by Golub-Welsch and cached per n.
struct GaussLaguerreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLaguerreRule& gauss_laguerre(int n);

/// Surface area of the unit sphere in R^nu: 2 pi^{nu/2} / Gamma(nu/2).
double unit_sphere_area(int nu);

/// int_{R^nu} exp(-a |xi|^2 + c1 |xi|) dxi for a > 0 (closed form via erfc
/// for nu = 1, radial quadrature otherwise).
double radial_exp_integral(double a, double c1, int nu);

}  // namespace dk
