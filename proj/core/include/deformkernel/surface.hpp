#pragma once

#include <complex>
#include <tuple>
#include <vector>

namespace dk {

using Complex = std::complex<double>;
/// A point of C^nu; the dot product is bilinear (no conjugation),
/// lambda . mu = lambda_1 mu_1 + ... + lambda_nu mu_nu.
using CVec = std::vector<Complex>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kFourPi = 4.0 * kPi;

/// Reduce an angle to [0, 4*pi), the canonical representative of R/4piZ.
double norm_4pi(double theta);
/// Reduce an angle to [0, 2*pi).
double norm_2pi(double theta);
/// Canonical projection R/4piZ -> R/2piZ (the paper's bold-pi map).
inline double project_2pi(double theta) { return norm_2pi(theta); }
/// Signed representative in (-q/2, q/2] of an angle modulo q.
double signed_mod(double theta, double quotient);

/**
 * A point on the Riemann surface of the square root: modulus r > 0 and
 * argument theta in R/4piZ, stored canonically in [0, 4*pi).  Needed because
 * t^{-nu/2} is two-valued over C \ {0} for odd nu; a bare complex number
 * cannot determine the sheet, so SurfaceTime is always constructed
 * explicitly.
 */
struct SurfaceTime {
    double r = 1.0;
    double theta = 0.0;

    SurfaceTime() = default;
    SurfaceTime(double r_, double theta_);

    /// Image in C \ {0}: r * exp(i * (theta mod 2pi)).
    Complex projection() const;
    /// Unit surface point of argument theta.
    static SurfaceTime unit(double theta_) { return SurfaceTime(1.0, theta_); }
};

SurfaceTime surface_mul(const SurfaceTime& a, const SurfaceTime& b);
/// Scale the modulus by a positive factor, keeping the sheet.
SurfaceTime surface_scale(const SurfaceTime& z, double factor);

/// z^{k/2} = r^{k/2} exp(i k theta / 2).  For even k this depends only on
/// projection(z); ramification occurs for odd k.
Complex surface_pow_half(const SurfaceTime& z, int k);

/**
 * Open sector of half-angle `half_angle` about the ray arg = `rotation`,
 * in the quotient R/(quotient)Z.  Use quotient = 2*pi for sets in C and
 * quotient = 4*pi for sets on the square-root surface; the paper writes
 * both kinds of interval ]a - r, a + r[_{2kpi}, so the quotient is an
 * explicit constructor parameter.
 */
struct Sector {
    double half_angle = 0.0;
    double rotation = 0.0;
    double quotient = kTwoPi;

    Sector() = default;
    Sector(double half_angle_, double rotation_ = 0.0, double quotient_ = kTwoPi);

    /// Strict membership; throws DomainError for z = 0 (argument undefined).
    bool contains(Complex z) const;
    bool contains(const SurfaceTime& z) const;
    /// Membership of a bare angle (radians).
    bool contains_angle(double arg) const;
};

/// The analytic dilation (t, x, y) -> (e^{i eps} t, e^{i eps/2} x,
/// e^{i eps/2} y); eps lives in R/4piZ and the spatial half-angle is taken
/// from the canonical representative.
std::tuple<SurfaceTime, CVec, CVec> dilate(const SurfaceTime& t, const CVec& x,
                                           const CVec& y, double epsilon);

// Bilinear complex-vector helpers.
Complex dot(const CVec& a, const CVec& b);
inline Complex square(const CVec& a) { return dot(a, a); }
double abs_norm(const CVec& a);  // |a| = sqrt(sum |a_i|^2)
CVec scale(const CVec& a, Complex factor);
CVec sub(const CVec& a, const CVec& b);

}  // namespace dk
