#include "deformkernel/borel.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "deformkernel/errors.hpp"
#include "deformkernel/quadrature.hpp"

namespace dk {

BorelDomain BorelDomain::strip(double kappa, double direction) {
    if (!(kappa > 0.0)) throw DomainError("strip requires kappa > 0");
    return {Kind::Strip, kappa, norm_2pi(direction)};
}
BorelDomain BorelDomain::sector(double theta, double direction) {
    if (!(theta > 0.0)) throw DomainError("sector requires theta > 0");
    return {Kind::SectorDomain, theta, norm_2pi(direction)};
}
BorelDomain BorelDomain::nevanlinna(double T, double direction) {
    if (!(T > 0.0)) throw DomainError("Nevanlinna disk requires T > 0");
    return {Kind::NevanlinnaDisk, T, norm_2pi(direction)};
}

bool domain_contains(const BorelDomain& d, Complex z) {
    const Complex back(std::cos(-d.direction), std::sin(-d.direction));
    switch (d.kind) {
        case BorelDomain::Kind::Strip: {
            const Complex w = back * z;
            const double dist = w.real() >= 0.0 ? std::abs(w.imag()) : std::abs(w);
            return dist < d.param;
        }
        case BorelDomain::Kind::SectorDomain: {
            if (z == Complex(0.0, 0.0)) return false;
            const Complex w = back * z;
            return std::abs(std::arg(w)) < d.param;
        }
        case BorelDomain::Kind::NevanlinnaDisk: {
            if (z == Complex(0.0, 0.0)) return false;
            const Complex fwd(std::cos(d.direction), std::sin(d.direction));
            return (fwd / z).real() > 1.0 / d.param;
        }
    }
    return false;
}

BorelFunction borel_transform(const CoefficientSeries& s) {
    BorelFunction f;
    f.source = s;
    f.fhat_coefficients.resize(s.coefficients.size());
    double fact = 1.0;
    for (std::size_t r = 0; r < s.coefficients.size(); ++r) {
        if (r > 0) fact *= double(r);
        f.fhat_coefficients[r] = s.coefficients[r] / fact;
    }
    return f;
}

Complex BorelFunction::eval(Complex tau) const {
    Complex sum(0.0, 0.0), p(1.0, 0.0);
    for (const Complex& c : fhat_coefficients) {
        sum += c * p;
        p *= tau;
    }
    return sum;
}

double BorelFunction::remainder_estimate(Complex tau) const {
    if (fhat_coefficients.empty()) return 0.0;
    return std::abs(fhat_coefficients.back()) *
           std::pow(std::abs(tau), double(fhat_coefficients.size() - 1));
}

Complex laplace_sum(const std::function<Complex(Complex)>& fhat, Complex t,
                    double direction) {
    const Complex ray(std::cos(direction), std::sin(direction));
    const Complex w = ray / t;
    if (!(w.real() > 0.0))
        throw DivergenceError("laplace_sum: Re(e^{i direction}/t) <= 0");

    // substitute tau = e^{i dir} u / Re(w):
    //   f(t) = (ray/t)/Re(w) int_0^inf fhat(e^{i dir} u/Re w) e^{-i u Im(w)/Re(w)} e^{-u} du
    const double re = w.real();
    const double ratio = w.imag() / re;
    const Complex front = w / re;
    auto integrand = [&](double u) {
        return fhat(ray * (u / re)) * std::exp(Complex(0.0, -ratio * u));
    };

    Complex prev(0.0, 0.0);
    bool have_prev = false;
    for (int nodes = 16; nodes <= 1024; nodes *= 2) {
        const GaussLaguerreRule& rule = gauss_laguerre(nodes);
        Complex sum(0.0, 0.0);
        for (int i = 0; i < nodes; ++i) sum += rule.weights[i] * integrand(rule.nodes[i]);
        sum *= front;
        if (have_prev && std::abs(sum - prev) <= 1e-10 * std::max(1.0, std::abs(sum)))
            return sum;
        prev = sum;
        have_prev = true;
    }
    throw TruncationError("laplace_sum: quadrature did not stabilize at 1024 nodes");
}

Complex laplace_sum(const BorelFunction& fhat, Complex t, double direction) {
    return laplace_sum([&fhat](Complex tau) { return fhat.eval(tau); }, t, direction);
}

Complex PadeApproximant::eval(Complex tau) const {
    auto horner = [&](const std::vector<Complex>& c) {
        Complex v(0.0, 0.0);
        for (std::size_t i = c.size(); i-- > 0;) v = v * tau + c[i];
        return v;
    };
    return horner(numerator) / horner(denominator);
}

std::vector<Complex> PadeApproximant::poles() const {
    // roots of the denominator from the companion matrix
    int deg = static_cast<int>(denominator.size()) - 1;
    while (deg > 0 && std::abs(denominator[deg]) < 1e-300) --deg;
    if (deg <= 0) return {};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 0; i < deg; ++i) {
        comp(i, deg - 1) = -denominator[i] / denominator[deg];
        if (i + 1 < deg) comp(i + 1, i) = Complex(1.0, 0.0);
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<Complex> out(deg);
    for (int i = 0; i < deg; ++i) out[i] = es.eigenvalues()(i);
    return out;
}

PadeApproximant pade_continuation(const CoefficientSeries& s, int L, int M) {
    if (L < 0 || M < 0) throw DomainError("pade degrees must be nonnegative");
    if (static_cast<std::size_t>(L + M + 1) > s.coefficients.size())
        throw DomainError("pade_continuation: L + M + 1 exceeds available coefficients");

    const BorelFunction f = borel_transform(s);
    const std::vector<Complex>& c = f.fhat_coefficients;
    auto cc = [&](int i) { return i < 0 ? Complex(0.0, 0.0) : c[i]; };

    double scale = 0.0;
    for (int i = 0; i <= L + M; ++i) scale = std::max(scale, std::abs(c[i]));
    PadeApproximant out;
    out.denominator.assign(M + 1, Complex(0.0, 0.0));
    out.denominator[0] = Complex(1.0, 0.0);
    if (scale == 0.0) {  // zero series -> zero approximant
        out.numerator.assign(L + 1, Complex(0.0, 0.0));
        return out;
    }

    if (M > 0) {
        Eigen::MatrixXcd H(M, M);
        Eigen::VectorXcd rhs(M);
        for (int k = 1; k <= M; ++k) {
            for (int j = 1; j <= M; ++j) H(k - 1, j - 1) = cc(L + k - j);
            rhs(k - 1) = -cc(L + k);
        }
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(H);
        lu.setThreshold(1e-13);
        if (lu.rank() < M) {
            // perturb once, then fail
            Eigen::MatrixXcd Hp = H;
            for (int i = 0; i < M; ++i) Hp(i, i) += Complex(1e-13 * scale, 0.0);
            Eigen::FullPivLU<Eigen::MatrixXcd> lu2(Hp);
            lu2.setThreshold(1e-14);
            if (lu2.rank() < M)
                throw DegenerateError("pade_continuation: Hankel system rank-deficient");
            Eigen::VectorXcd b = lu2.solve(rhs);
            for (int j = 1; j <= M; ++j) out.denominator[j] = b(j - 1);
        } else {
            Eigen::VectorXcd b = lu.solve(rhs);
            for (int j = 1; j <= M; ++j) out.denominator[j] = b(j - 1);
        }
    }

    out.numerator.assign(L + 1, Complex(0.0, 0.0));
    for (int i = 0; i <= L; ++i) {
        Complex v(0.0, 0.0);
        for (int j = 0; j <= std::min(i, M); ++j) v += out.denominator[j] * cc(i - j);
        out.numerator[i] = v;
    }
    return out;
}

double growth_constant_C(const PotentialMeasure& m, double kappa, double R,
                         double eps_gauss) {
    if (!(eps_gauss > 0.0)) throw DomainError("growth constant requires eps_gauss > 0");
    if (!(kappa > 0.0) || R < 0.0) throw DomainError("growth constant: bad kappa or R");
    if (!integrability(m, IntegrabilityCondition::exp_quadratic(eps_gauss)).finite())
        throw InfiniteError("growth constant: exp(eps xi^2) d|mu| diverges");

    const double front = 2.0 * kappa / eps_gauss;
    double integral;
    if (m.kind == MeasureKind::Discrete) {
        integral = 0.0;
        for (const Atom& a : m.atoms) {
            const double n = abs_norm(a.xi);
            integral +=
                std::abs(a.weight) * std::exp(front + 0.5 * eps_gauss * n * n + R * n);
        }
    } else {
        const double a = 1.0 / (4.0 * m.gamma) - 0.5 * eps_gauss;  // > 0 by (13)
        integral = std::pow(4.0 * kPi * m.gamma, -0.5 * m.nu) * std::exp(front) *
                   radial_exp_integral(a, R, m.nu);
    }
    return 2.0 * std::sqrt(integral);
}

Complex hat_pconj_eval(const CoefficientSeries& series, Complex tau) {
    return borel_transform(series).eval(tau);
}

Complex hat_pconj_eval(const PotentialMeasure& m, Complex tau, const CVec& x,
                       const CVec& y, int order) {
    // the recursion engine keeps high coefficient orders tractable
    return hat_pconj_eval(
        small_time_coefficients(m, x, y, order, CoefficientEngine::ConjugateRecursion),
        tau);
}

}  // namespace dk
