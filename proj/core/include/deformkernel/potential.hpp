#pragma once

#include <optional>
#include <vector>

#include "deformkernel/surface.hpp"

namespace dk {

enum class MeasureKind { Discrete, Gaussian };

struct Atom {
    Complex weight;
    CVec xi;
};

/**
 * The measure mu defining the potential c(x) = int exp(i e^{-i eps/2} x.xi) dmu(xi).
 *
 * Discrete: finitely many atoms (weight, xi), xi possibly complex.
 * Gaussian: density chat(xi) = (4 pi gamma)^{-nu/2} exp(-xi^2/(4 gamma)),
 * normalized so that c(x) = exp(-gamma x^2) exactly.
 *
 * `epsilon` is the dilation direction baked into c (R/4piZ).  `alpha` is the
 * declared case-2 analyticity half-angle of a Gaussian density; any value
 * below pi/4 is admissible since chat decays on every such sector, so it is
 * a caller choice rather than a computed maximum.
 */
struct PotentialMeasure {
    MeasureKind kind = MeasureKind::Discrete;
    std::vector<Atom> atoms;   // Discrete only
    double gamma = 1.0;        // Gaussian only
    int nu = 1;
    double epsilon = 0.0;      // stored canonically in [0, 4pi)
    double alpha = kPi / 8.0;  // Gaussian case-2 aperture, < pi/4

    static PotentialMeasure discrete(std::vector<Atom> atoms, double epsilon = 0.0);
    static PotentialMeasure gaussian(double gamma, int nu, double epsilon = 0.0,
                                     double alpha = kPi / 8.0);

    int dim() const { return nu; }
    /// Sum of |weight| (total mass of |mu|) for discrete measures, 1 for Gaussian.
    double total_mass() const;
};

/// c(x) = int exp(i e^{-i eps/2} x.xi) dmu(xi).  Discrete: finite sum.
/// Gaussian: closed form exp(-gamma e^{-i pi(eps)} x^2).
Complex c_eval(const PotentialMeasure& m, const CVec& x);

/// The eps = pi specialization c(x) = int exp(x.xi) dmu(xi), which realizes
/// growing potentials such as exp(x_1).  Requires m.epsilon = pi.
Complex schrodinger_growing_potential(const PotentialMeasure& m, const CVec& x);

struct IntegrabilityCondition {
    enum class Kind { ExpLinear, ExpQuadratic };
    Kind kind;
    double param;  // R for ExpLinear, the Gaussian weight for ExpQuadratic

    static IntegrabilityCondition exp_linear(double R) {
        return {Kind::ExpLinear, R};
    }
    static IntegrabilityCondition exp_quadratic(double eps_gauss) {
        return {Kind::ExpQuadratic, eps_gauss};
    }
};

struct IntegrabilityReport {
    IntegrabilityCondition condition;
    double value;  // the integral, +inf when divergent
    bool finite() const;
};

/// int exp(R |xi|) d|mu| or int exp(eps_gauss xi^2) d|mu|.  Discrete measures
/// always give a finite sum; a Gaussian density diverges under ExpQuadratic
/// exactly when eps_gauss >= 1/(4 gamma).
IntegrabilityReport integrability(const PotentialMeasure& m,
                                  const IntegrabilityCondition& condition);

struct CaseClassification {
    enum class Kind { Case1, Case2, Both };
    Kind kind;
    double theta = 0.0;  // case-1 support aperture (0 for real atoms)
    double alpha = 0.0;  // case-2 density aperture
};

/// Classify the measure per the two convergence mechanisms: atoms supported
/// in a complex sector of half-angle theta < pi/4 (case 1, real atoms give
/// the degenerate theta = 0), or an analytic exponentially-decaying density
/// (case 2; a Gaussian satisfies both).  Throws DomainError for atoms that
/// fit no sector of half-angle < pi/4.
CaseClassification case_classification(const PotentialMeasure& m);

}  // namespace dk
