#pragma once

#include <functional>
#include <vector>

#include "deformkernel/surface.hpp"

namespace dk {

/// Uniform 1-D grid with homogeneous Dirichlet boundaries and a time step.
struct Grid1D {
    double x_min = -10.0;
    double x_max = 10.0;
    int n_points = 1001;
    double dt = 1e-4;

    Grid1D() = default;
    Grid1D(double x_min_, double x_max_, int n_points_, double dt_);
    double dx() const { return (x_max - x_min) / (n_points - 1); }
    std::vector<double> xs() const;
};

struct EvolveResult {
    std::vector<Complex> psi;
    bool stability_warning = false;  // solution mass reached the boundary
    double boundary_level = 0.0;     // max |psi| near the boundary / max |psi|
};

/// Crank-Nicolson for d_t u = d_x^2 u + V(x) u, Dirichlet boundaries,
/// second order in dx and dt.  V is the full potential (lambda x^2 + c(x)).
EvolveResult evolve_heat(const std::function<Complex(double)>& potential,
                         const std::vector<Complex>& phi0, const Grid1D& grid,
                         double t_final);

/// Crank-Nicolson for d_t psi = i (d_x^2 + V(x)) psi with real V: the Cayley
/// step is unitary for the Hermitian discretization, so the discrete L^2
/// norm is conserved to rounding.
struct SchrodingerResult {
    std::vector<Complex> psi;
    bool stability_warning = false;
    double boundary_level = 0.0;
    double max_norm_drift = 0.0;  // max per-step |d ||psi||^2| / ||psi||^2
};
SchrodingerResult evolve_schrodinger(const std::function<double(double)>& potential,
                                     const std::vector<Complex>& phi0,
                                     const Grid1D& grid, double t_final);

/**
 * Harmonic kernel by Hermite eigen-expansion, for the confining generator
 * d_x^2 - a^2 x^2 with a = sqrt(lambda), lambda > 0 (the trace-class
 * regime): sum_n e^{-(2n+1) a t} psi_n(x) psi_n(y).  Independent of the
 * closed form; remainder bounded by the geometric decay of e^{-2 a t n}.
 */
double mehler_eigen_kernel(double lambda, double t, double x, double y, int n_terms,
                           double tol = 1e-12);

/// Trapezoid action int kernel(t, x_i, y) phi0(y) dy on the grid, one value
/// per requested output point.
std::vector<Complex> kernel_action(
    const std::function<Complex(double, double)>& kernel_xy,
    const std::vector<Complex>& phi0, const Grid1D& grid,
    const std::vector<double>& out_xs);
std::vector<Complex> kernel_action(
    const std::function<Complex(double, double)>& kernel_xy,
    const std::vector<Complex>& phi0, const Grid1D& grid);

}  // namespace dk
