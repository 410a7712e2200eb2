#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>

#include "deformkernel/surface.hpp"

namespace dk {

using Rational = boost::multiprecision::cpp_rational;

/// Gaussian-rational complex number.  Every finite double is a dyadic
/// rational, so conversion from Complex is exact.
struct RationalComplex {
    Rational re;
    Rational im;

    RationalComplex() : re(0), im(0) {}
    RationalComplex(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
    RationalComplex(Rational re_, Rational im_ = Rational(0))
        : re(std::move(re_)), im(std::move(im_)) {}

    static RationalComplex from_complex(const Complex& z) {
        return RationalComplex(Rational(z.real()), Rational(z.imag()));
    }
    Complex to_complex() const {
        return Complex(static_cast<double>(re), static_cast<double>(im));
    }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    RationalComplex& operator+=(const RationalComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    RationalComplex& operator-=(const RationalComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    RationalComplex& operator*=(const RationalComplex& o) {
        const Rational nre = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = nre;
        return *this;
    }
    friend RationalComplex operator+(RationalComplex a, const RationalComplex& b) {
        a += b;
        return a;
    }
    friend RationalComplex operator-(RationalComplex a, const RationalComplex& b) {
        a -= b;
        return a;
    }
    friend RationalComplex operator*(RationalComplex a, const RationalComplex& b) {
        a *= b;
        return a;
    }
    friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
};

}  // namespace dk
