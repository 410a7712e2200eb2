#pragma once

#include "deformkernel/surface.hpp"

namespace dk {

/**
 * Parameters of the harmonic generator d_x^2 + lambda x^2.  Only
 * omega^2 = -4 lambda enters any formula: the closed-form kernel is
 * rewritten in the even functions sh(w)/w and ch(w) of w^2, so no branch
 * of omega = 2 (-lambda)^{1/2} is ever chosen and lambda > 0 carries no
 * spurious cut.
 */
struct HarmonicParams {
    double lambda = 0.0;
    int nu = 1;

    Complex omega_sq() const { return Complex(-4.0 * lambda, 0.0); }
};

/// sh(sqrt(u))/sqrt(u), entire in u, equal to 1 at u = 0.
Complex shc(Complex u);
/// ch(sqrt(u)), entire in u.
Complex chc(Complex u);

/// Free kernel (4 pi t)^{-nu/2} exp(-(x-y)^2 / 4t); the prefactor is
/// sheet-aware through the surface argument of t.
Complex p_free(const SurfaceTime& t, const CVec& x, const CVec& y, int nu);

/// Harmonic kernel (4 pi sh(wt)/w)^{-nu/2} exp(-(w/4sh(wt)) (ch(wt)(x^2+y^2) - 2 x.y)),
/// evaluated through shc/chc so only omega^2 = -4 lambda enters.  The odd
/// power splits as (4 pi t)^{-nu/2} (sheet-aware) times shc^{-nu/2}
/// (principal branch, = 1 at t = 0).  Throws PoleError near the zeros of
/// sh(wt) away from wt = 0.
Complex p_harm(const SurfaceTime& t, const CVec& x, const CVec& y,
               const HarmonicParams& params);

/// Rotated kernels: p_free(e^{-i eps} t, e^{-i eps/2} x, e^{-i eps/2} y),
/// so the dilation-covariance identity p_rot(dilate(t,x,y,eps)) = p(t,x,y)
/// holds by substitution.  This reproduces the displayed rotated formulas,
/// prefactor (4 pi e^{-i eps} t)^{-nu/2} included.
Complex p_free_rotated(const SurfaceTime& t, const CVec& x, const CVec& y,
                       int nu, double epsilon);
Complex p_harm_rotated(const SurfaceTime& t, const CVec& x, const CVec& y,
                       const HarmonicParams& params, double epsilon);

}  // namespace dk
