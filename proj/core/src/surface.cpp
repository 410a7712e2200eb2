#include "deformkernel/surface.hpp"

#include <cmath>
#include <stdexcept>

#include "deformkernel/errors.hpp"

namespace dk {

double norm_4pi(double theta) {
    double t = std::fmod(theta, kFourPi);
    if (t < 0.0) t += kFourPi;
    if (t >= kFourPi) t = 0.0;  // fmod rounding can land exactly on 4pi
    return t;
}

double norm_2pi(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return t;
}

double signed_mod(double theta, double quotient) {
    double t = std::fmod(theta, quotient);
    if (t > 0.5 * quotient) t -= quotient;
    if (t <= -0.5 * quotient) t += quotient;
    return t;
}

SurfaceTime::SurfaceTime(double r_, double theta_) : r(r_), theta(norm_4pi(theta_)) {
    if (!(r > 0.0)) throw DomainError("SurfaceTime requires modulus r > 0");
}

Complex SurfaceTime::projection() const {
    return Complex(r * std::cos(theta), r * std::sin(theta));
}

SurfaceTime surface_mul(const SurfaceTime& a, const SurfaceTime& b) {
    return SurfaceTime(a.r * b.r, a.theta + b.theta);
}

SurfaceTime surface_scale(const SurfaceTime& z, double factor) {
    return SurfaceTime(z.r * factor, z.theta);
}

Complex surface_pow_half(const SurfaceTime& z, int k) {
    const double half = 0.5 * static_cast<double>(k);
    const double mod = std::pow(z.r, half);
    const double arg = half * z.theta;
    return Complex(mod * std::cos(arg), mod * std::sin(arg));
}

Sector::Sector(double half_angle_, double rotation_, double quotient_)
    : half_angle(half_angle_), rotation(rotation_), quotient(quotient_) {
    if (!(half_angle > 0.0)) throw DomainError("Sector requires half_angle > 0");
}

bool Sector::contains_angle(double arg) const {
    const double delta = signed_mod(arg - rotation, quotient);
    return std::abs(delta) < half_angle;  // open sector, strict
}

bool Sector::contains(Complex z) const {
    if (z == Complex(0.0, 0.0)) throw DomainError("sector membership undefined at z = 0");
    return contains_angle(std::arg(z));
}

bool Sector::contains(const SurfaceTime& z) const {
    return contains_angle(z.theta);
}

std::tuple<SurfaceTime, CVec, CVec> dilate(const SurfaceTime& t, const CVec& x,
                                           const CVec& y, double epsilon) {
    const double eps = norm_4pi(epsilon);
    const SurfaceTime t2 = surface_mul(t, SurfaceTime::unit(eps));
    const Complex phase(std::cos(0.5 * eps), std::sin(0.5 * eps));
    return {t2, scale(x, phase), scale(y, phase)};
}

Complex dot(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Complex s(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double abs_norm(const CVec& a) {
    double s = 0.0;
    for (const Complex& c : a) s += std::norm(c);
    return std::sqrt(s);
}

CVec scale(const CVec& a, Complex factor) {
    CVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = factor * a[i];
    return out;
}

CVec sub(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sub: dimension mismatch");
    CVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

}  // namespace dk
