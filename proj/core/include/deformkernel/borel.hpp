#pragma once

#include <functional>
#include <vector>

#include "deformkernel/deformation.hpp"
#include "deformkernel/potential.hpp"
#include "deformkernel/surface.hpp"

namespace dk {

/**
 * Summability domains, each rotatable by a direction angle:
 *   Strip(kappa):        d(e^{-i dir} z, [0, +inf)) < kappa      (tau-plane)
 *   SectorDomain(theta): |arg(e^{-i dir} z)| < theta             (tau-plane)
 *   NevanlinnaDisk(T):   Re(e^{i dir} / z) > 1/T, the open disk of
 *                        center e^{i dir} T/2 and radius T/2      (t-plane)
 */
struct BorelDomain {
    enum class Kind { Strip, SectorDomain, NevanlinnaDisk };
    Kind kind;
    double param;       // kappa, theta, or T
    double direction;   // mod 2 pi

    static BorelDomain strip(double kappa, double direction = 0.0);
    static BorelDomain sector(double theta, double direction = 0.0);
    static BorelDomain nevanlinna(double T, double direction = 0.0);
};

bool domain_contains(const BorelDomain& d, Complex z);

/// Borel transform: coefficient-wise division by r!.  Evaluation is the
/// truncated power sum; `remainder_estimate` reports the magnitude of the
/// last retained term at tau as a crude tail diagnostic.
struct BorelFunction {
    CoefficientSeries source;
    std::vector<Complex> fhat_coefficients;  // a_r / r!

    Complex eval(Complex tau) const;
    double remainder_estimate(Complex tau) const;
};
BorelFunction borel_transform(const CoefficientSeries& s);

/**
 * Laplace (Borel) sum f(t) = int_0^inf fhat(tau) e^{-tau/t} dtau/t along the
 * ray arg tau = direction, by Gauss-Laguerre quadrature with node doubling
 * until successive values agree to 1e-10.  Requires Re(e^{i direction}/t) > 0
 * (DivergenceError otherwise); TruncationError if doubling does not settle.
 */
Complex laplace_sum(const std::function<Complex(Complex)>& fhat, Complex t,
                    double direction);
Complex laplace_sum(const BorelFunction& fhat, Complex t, double direction);

/**
 * [L/M] Pade approximant of the Borel transform sum (a_r/r!) tau^r, from the
 * Hankel linear system for the denominator.  Degenerate systems are
 * perturbed and retried once, then rejected (DegenerateError).
 */
struct PadeApproximant {
    std::vector<Complex> numerator;    // degree L
    std::vector<Complex> denominator;  // degree M, constant term 1
    Complex eval(Complex tau) const;
    std::vector<Complex> poles() const;
};
PadeApproximant pade_continuation(const CoefficientSeries& s, int L, int M);

/// The explicit growth constant
///   C = 2 (int exp(2 kappa/eps + (eps/2) xi^2 + R |xi|) d|mu|(xi))^{1/2}
/// entering the bound |hat p^conj(tau)| <= exp(C |tau|^{1/2}).  The eps here
/// is the Gaussian-weight parameter of the integrability condition, not the
/// dilation angle.  InfiniteError when int exp(eps xi^2) d|mu| diverges.
double growth_constant_C(const PotentialMeasure& m, double kappa, double R,
                         double eps_gauss);

/// hat p^conj(tau, x, y) = sum_{r <= order} (a_r / r!) tau^r with a_r from
/// the deformation series; entire in tau for discrete measures.
Complex hat_pconj_eval(const PotentialMeasure& m, Complex tau, const CVec& x,
                       const CVec& y, int order);
Complex hat_pconj_eval(const CoefficientSeries& series, Complex tau);

}  // namespace dk
