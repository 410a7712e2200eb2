#include "deformkernel/exact_kernels.hpp"

#include <cmath>

#include "deformkernel/errors.hpp"

namespace dk {

namespace {

constexpr double kPoleTol = 1e-12;

// Scaled spatial arguments for the rotated kernels: e^{-i eps/2} x.
Complex back_phase_half(double epsilon) {
    const double eps = norm_4pi(epsilon);
    return Complex(std::cos(-0.5 * eps), std::sin(-0.5 * eps));
}

}  // namespace

Complex shc(Complex u) {
    if (std::abs(u) < 1.0) {
        // sh(w)/w = sum u^k / (2k+1)!
        Complex sum(1.0, 0.0), term(1.0, 0.0);
        for (int k = 1; k <= 24; ++k) {
            term *= u / static_cast<double>((2 * k) * (2 * k + 1));
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    const Complex w = std::sqrt(u);  // either branch: sh(w)/w is even in w
    return std::sinh(w) / w;
}

Complex chc(Complex u) {
    if (std::abs(u) < 1.0) {
        Complex sum(1.0, 0.0), term(1.0, 0.0);
        for (int k = 1; k <= 24; ++k) {
            term *= u / static_cast<double>((2 * k - 1) * (2 * k));
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return std::cosh(std::sqrt(u));
}

Complex p_free(const SurfaceTime& t, const CVec& x, const CVec& y, int nu) {
    const Complex pref = surface_pow_half(surface_scale(t, kFourPi), -nu);
    const Complex expo = -square(sub(x, y)) / (4.0 * t.projection());
    return pref * std::exp(expo);
}

Complex p_harm(const SurfaceTime& t, const CVec& x, const CVec& y,
               const HarmonicParams& params) {
    if (params.lambda == 0.0) return p_free(t, x, y, params.nu);  // sh(wt)/w -> t

    const Complex tc = t.projection();
    const Complex u = params.omega_sq() * tc * tc;  // (omega t)^2
    // Genuine poles of 1/sh(wt) sit at wt in i pi Z \ {0}, i.e. |w| >= pi;
    // for |w| < 1 the removable zero at wt = 0 keeps |shc| > 0.8.
    const Complex w = std::sqrt(u);
    if (std::abs(w) >= 1.0 && std::abs(std::sinh(w)) < kPoleTol)
        throw PoleError("p_harm evaluated at a conjugate point: |sh(omega t)| < 1e-12");

    const Complex s = shc(u);
    const Complex c = chc(u);
    const Complex pref = surface_pow_half(surface_scale(t, kFourPi), -params.nu) *
                         std::pow(s, -0.5 * static_cast<double>(params.nu));
    const Complex expo =
        -0.25 * (c * (square(x) + square(y)) - 2.0 * dot(x, y)) / (tc * s);
    return pref * std::exp(expo);
}

Complex p_free_rotated(const SurfaceTime& t, const CVec& x, const CVec& y,
                       int nu, double epsilon) {
    const double eps = norm_4pi(epsilon);
    const SurfaceTime tb = surface_mul(t, SurfaceTime::unit(kFourPi - eps));
    const Complex ph = back_phase_half(epsilon);
    return p_free(tb, scale(x, ph), scale(y, ph), nu);
}

Complex p_harm_rotated(const SurfaceTime& t, const CVec& x, const CVec& y,
                       const HarmonicParams& params, double epsilon) {
    const double eps = norm_4pi(epsilon);
    const SurfaceTime tb = surface_mul(t, SurfaceTime::unit(kFourPi - eps));
    const Complex ph = back_phase_half(epsilon);
    return p_harm(tb, scale(x, ph), scale(y, ph), params);
}

}  // namespace dk
