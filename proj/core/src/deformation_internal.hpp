#pragma once

#include <cmath>

#include "deformkernel/deformation.hpp"
#include "deformkernel/errors.hpp"

namespace dk::detail {

// Rotated evaluation frame: v_n for a measure with dilation eps equals the
// eps = 0 term at (e^{-i eps} t, e^{-i eps/2} x, e^{-i eps/2} y).
struct Frame {
    SurfaceTime t_rot{1.0, 0.0};
    Complex tc;
    CVec x_rot, y_rot;
};

inline Frame make_frame(const PotentialMeasure& m, const SurfaceTime& t, const CVec& x,
                        const CVec& y) {
    Frame f;
    f.t_rot = surface_mul(t, SurfaceTime::unit(kFourPi - m.epsilon));
    f.tc = f.t_rot.projection();
    const Complex half(std::cos(-0.5 * m.epsilon), std::sin(-0.5 * m.epsilon));
    f.x_rot = scale(x, half);
    f.y_rot = scale(y, half);
    return f;
}

// |Q| <= (sum_j ||xi_j||)^2 / 4 over the simplex (Cauchy-Schwarz on the
// bilinear dot and 0 <= s_min (1 - s_max) <= 1/4).
inline double q_max_bound(const PotentialMeasure& m, int n) {
    double xmax = 0.0;
    for (const Atom& a : m.atoms) xmax = std::max(xmax, abs_norm(a.xi));
    const double s = n * xmax;
    return 0.25 * s * s;
}

// Remainder of the order-M expansion of exp(-t Q): (|t| Qmax)^{M+1}/(M+1)! e^{|t| Qmax}.
inline double exp_tail_bound(double tq, int order) {
    double term = 1.0;
    for (int i = 1; i <= order + 1; ++i) term *= tq / i;
    return term * std::exp(tq);
}

// Terms kept in the series of exp(i s phi) so that the relative factor error
// stays below tol: |phi|^{H+1}/(H+1)! e^{|phi|} <= tol.
inline int phase_order_for(double abs_phi, double tol) {
    if (abs_phi == 0.0) return 0;
    double term = std::exp(abs_phi);
    for (int h = 0; h <= 64; ++h) {
        term *= abs_phi / (h + 1);
        if (term <= tol) return h;
    }
    throw TruncationError("phase expansion cannot reach the requested tolerance");
}

// Number of atom tuples, guarded by the 10^6 enumeration cap.
inline std::uint64_t tuple_count(std::size_t n_atoms, int n) {
    double est = std::pow(static_cast<double>(n_atoms), n);
    if (est > 1e6)
        throw DomainError(
            "tuple enumeration above 10^6: use the Monte Carlo method");
    std::uint64_t c = 1;
    for (int i = 0; i < n; ++i) c *= n_atoms;
    return c;
}

// coefficients.cpp: the conjugate-heat recursion engine behind
// CoefficientEngine::ConjugateRecursion.
CoefficientSeries coefficients_by_recursion(const PotentialMeasure& m, const CVec& x,
                                            const CVec& y, int order, bool exact_ok,
                                            int quarter);

inline void check_in_domain(const PotentialMeasure& m, const SurfaceTime& t,
                            double beta) {
    if (m.kind == MeasureKind::Discrete) {
        if (beta != 0.0)
            throw DomainError("contour rotation applies to case-2 densities only");
        const CaseClassification cls = case_classification(m);
        const double half = kPi / 2.0 - 2.0 * cls.theta;
        const double delta = std::abs(signed_mod(t.theta - m.epsilon, kFourPi));
        // closed sector: the boundary rays carry the Schrodinger values and
        // the series still converges absolutely there
        if (delta > half + 1e-12)
            throw DomainError("t outside the case-1 validity sector");
        return;
    }
    if (std::abs(beta) >= kPi / 4.0)
        throw DomainError("contour angle must satisfy |beta| < pi/4");
    const double delta = std::abs(signed_mod(t.theta - m.epsilon - 2.0 * beta, kFourPi));
    if (delta >= kPi / 2.0 - 1e-12)
        throw DomainError("Re(e^{-2 i beta} t) <= 0: t outside the rotated half-plane");
}

}  // namespace dk::detail
