#include "deformkernel/potential.hpp"

#include <cmath>
#include <limits>

#include "deformkernel/errors.hpp"
#include "deformkernel/quadrature.hpp"

namespace dk {

namespace {

constexpr double kArgTol = 1e-9;

bool is_real_vec(const CVec& xi) {
    for (const Complex& c : xi)
        if (c.imag() != 0.0) return false;
    return true;
}

// Common phase phi of an atom in R^{+,nu}_{<,theta} form: xi = e^{i phi} v
// with v in the closed positive orthant.  Returns nullopt if no such phase
// exists.
std::optional<double> atom_phase(const CVec& xi) {
    std::optional<double> phi;
    for (const Complex& c : xi) {
        if (std::abs(c) == 0.0) continue;
        const double a = std::arg(c);
        if (!phi) {
            phi = a;
        } else if (std::abs(signed_mod(a - *phi, kTwoPi)) > kArgTol) {
            return std::nullopt;
        }
    }
    if (!phi) phi = 0.0;  // the zero atom fits any sector
    return phi;
}

}  // namespace

PotentialMeasure PotentialMeasure::discrete(std::vector<Atom> atoms, double epsilon) {
    if (atoms.empty()) throw DomainError("discrete measure requires at least one atom");
    PotentialMeasure m;
    m.kind = MeasureKind::Discrete;
    m.nu = static_cast<int>(atoms.front().xi.size());
    for (const Atom& a : atoms)
        if (static_cast<int>(a.xi.size()) != m.nu)
            throw DomainError("discrete measure atoms must share one dimension");
    m.atoms = std::move(atoms);
    m.epsilon = norm_4pi(epsilon);
    return m;
}

PotentialMeasure PotentialMeasure::gaussian(double gamma, int nu, double epsilon,
                                            double alpha) {
    if (!(gamma > 0.0)) throw DomainError("gaussian measure requires gamma > 0");
    if (!(alpha > 0.0 && alpha < kPi / 4.0))
        throw DomainError("gaussian case-2 aperture must satisfy 0 < alpha < pi/4");
    PotentialMeasure m;
    m.kind = MeasureKind::Gaussian;
    m.gamma = gamma;
    m.nu = nu;
    m.epsilon = norm_4pi(epsilon);
    m.alpha = alpha;
    return m;
}

double PotentialMeasure::total_mass() const {
    if (kind == MeasureKind::Gaussian) return 1.0;
    double s = 0.0;
    for (const Atom& a : atoms) s += std::abs(a.weight);
    return s;
}

Complex c_eval(const PotentialMeasure& m, const CVec& x) {
    const double eps = m.epsilon;
    if (m.kind == MeasureKind::Gaussian) {
        // int exp(i e^{-i eps/2} x.xi) chat(xi) dxi = exp(-gamma (e^{-i eps/2} x)^2)
        const Complex rot(std::cos(-project_2pi(eps)), std::sin(-project_2pi(eps)));
        return std::exp(-m.gamma * rot * square(x));
    }
    const Complex half(std::cos(-0.5 * eps), std::sin(-0.5 * eps));
    const Complex iu(0.0, 1.0);
    Complex sum(0.0, 0.0);
    for (const Atom& a : m.atoms) sum += a.weight * std::exp(iu * half * dot(x, a.xi));
    return sum;
}

Complex schrodinger_growing_potential(const PotentialMeasure& m, const CVec& x) {
    if (std::abs(signed_mod(m.epsilon - kPi, kFourPi)) > 1e-12)
        throw DomainError("growing-potential form requires epsilon = pi");
    if (m.kind != MeasureKind::Discrete)
        throw DomainError("growing-potential form is defined for discrete measures");
    Complex sum(0.0, 0.0);
    for (const Atom& a : m.atoms) sum += a.weight * std::exp(dot(x, a.xi));
    return sum;
}

bool IntegrabilityReport::finite() const { return std::isfinite(value); }

IntegrabilityReport integrability(const PotentialMeasure& m,
                                  const IntegrabilityCondition& condition) {
    if (condition.param < 0.0)
        throw DomainError("integrability condition requires a nonnegative parameter");
    const bool linear = condition.kind == IntegrabilityCondition::Kind::ExpLinear;

    if (m.kind == MeasureKind::Discrete) {
        double s = 0.0;
        for (const Atom& a : m.atoms) {
            const double n = abs_norm(a.xi);
            s += std::abs(a.weight) *
                 std::exp(condition.param * (linear ? n : n * n));
        }
        return {condition, s};
    }

    const double inv4g = 1.0 / (4.0 * m.gamma);
    if (linear) {
        const double norm = std::pow(4.0 * kPi * m.gamma, -0.5 * m.nu);
        return {condition, norm * radial_exp_integral(inv4g, condition.param, m.nu)};
    }
    if (condition.param >= inv4g)
        return {condition, std::numeric_limits<double>::infinity()};
    return {condition, std::pow(1.0 - 4.0 * m.gamma * condition.param, -0.5 * m.nu)};
}

CaseClassification case_classification(const PotentialMeasure& m) {
    if (m.kind == MeasureKind::Gaussian)
        return {CaseClassification::Kind::Both, 0.0, m.alpha};

    bool all_real = true;
    for (const Atom& a : m.atoms) all_real = all_real && is_real_vec(a.xi);
    if (all_real) return {CaseClassification::Kind::Case1, 0.0, 0.0};

    double theta = 0.0;
    for (const Atom& a : m.atoms) {
        const auto phi = atom_phase(a.xi);
        if (!phi || std::abs(signed_mod(*phi, kTwoPi)) >= kPi / 4.0)
            throw DomainError(
                "inadmissible measure: an atom lies outside every sector of "
                "half-angle < pi/4");
        theta = std::max(theta, std::abs(signed_mod(*phi, kTwoPi)));
    }
    return {CaseClassification::Kind::Case1, theta, 0.0};
}

}  // namespace dk
