#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "deformkernel/potential.hpp"
#include "deformkernel/rational.hpp"
#include "deformkernel/simplex.hpp"
#include "deformkernel/surface.hpp"

namespace dk {

enum class Method { Exact, MonteCarlo };

struct TruncationReport {
    int order_used = 0;
    double last_term_norm = 0.0;
    std::optional<double> mc_std_error;
};

/// Small-time expansion coefficients a_0..a_N of p^conj at fixed (x, y),
/// taken with respect to the kernel's own time variable t.  a_0 = 1 always.
/// `exact` marks coefficients computed end-to-end in rational-complex
/// arithmetic, which is possible exactly when every phase exponent x.xi and
/// y.xi vanishes and the dilation projection is a multiple of pi/2; the
/// rational values are then kept alongside the double view.
struct CoefficientSeries {
    std::vector<Complex> coefficients;
    bool exact = false;
    std::vector<RationalComplex> exact_coefficients;
};

struct McOptions {
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
};

struct McEstimate {
    Complex value;
    double std_error;
};

/**
 * One term v_n of the deformation series, by tuple enumeration over the
 * atoms of a discrete measure and exact simplex-moment integration of the
 * expanded integrand.  `inner_order` caps the t-expansion of exp(-t Q);
 * throws TruncationError when the remainder bound at that order exceeds
 * `tol`, and DomainError when the tuple count would exceed 10^6.
 */
Complex v_n_exact(const PotentialMeasure& m, int n, const SurfaceTime& t,
                  const CVec& x, const CVec& y, int inner_order, double tol = 1e-12);

/// Smallest inner order whose remainder bound passes `tol` for v_n at t.
int choose_inner_order(const PotentialMeasure& m, int n, const SurfaceTime& t,
                       double tol = 1e-12);

/// Monte Carlo estimate of v_n: s as i.i.d. uniforms (the symmetrized
/// bridge-covariance form of the simplex integral), xi from the atom weights
/// or from the |chat| Gaussian with importance reweighting.  `beta` applies
/// the case-2 contour rotation (densities only).  Deterministic for a fixed
/// seed: per-(n, block) generators are derived from the master seed by a
/// counter scheme and blocks are reduced in index order.
McEstimate v_n_monte_carlo(const PotentialMeasure& m, int n, const SurfaceTime& t,
                           const CVec& x, const CVec& y, const McOptions& opt,
                           double beta = 0.0);

/// Validity sector for the deformation series on the square-root surface,
/// rotated by the measure's dilation epsilon.  Case 1: half-angle
/// pi/2 - 2 theta.  Case 2: half-angle pi/2 + 2 alpha, or the beta-rotated
/// half-plane Re(e^{-2 i beta} t) > 0 when a contour angle is given.
Sector domain_of_validity(const PotentialMeasure& m,
                          std::optional<double> beta = std::nullopt);

struct PConjResult {
    Complex value;
    TruncationReport report;
};

/// p^conj = sum_{n <= order} v_n.  Exact mode requires a discrete measure;
/// beta != 0 selects the case-2 rotated integrand (Monte Carlo only).
/// Throws DomainError outside the validity sector (case-1 evaluation is
/// allowed on the closed sector boundary, where the series still converges
/// absolutely and carries the Schrodinger edge values).
PConjResult p_conj(const PotentialMeasure& m, const SurfaceTime& t, const CVec& x,
                   const CVec& y, int order, Method method, double beta = 0.0,
                   const McOptions& mc = {});

/// Fully rational evaluation of sum_{n <= order} v_n for measures and
/// evaluation points that keep every operation in Q(i): all phase exponents
/// must vanish and e^{-i eps} t must sit on a quarter-axis.  Returns nullopt
/// when those conditions fail.  `truncation_free` is set when Q vanishes
/// identically (all atoms at xi = 0), in which case the terms are exact with
/// no expansion remainder at all.
struct ExactPConj {
    std::vector<RationalComplex> terms;  // v_0..v_order
    RationalComplex sum;
    bool truncation_free = false;
};
std::optional<ExactPConj> p_conj_exact_rational(const PotentialMeasure& m,
                                                const SurfaceTime& t, const CVec& x,
                                                const CVec& y, int order,
                                                int inner_order);

/// Interchangeable routes to the same coefficients, cross-checked in the
/// test suite (rational equality where both run exactly):
///   SimplexMoments      expand exp(-t Q) per v_n and integrate each monomial
///                       over the ordered simplex (the defining route);
///   ConjugateRecursion  the transport recursion
///                       r a_r + (x-y).grad a_r = lap a_{r-1} + c a_{r-1}
///                       on truncated exponential-polynomials, O(order^3),
///                       for high orders where the expansion is impractical.
enum class CoefficientEngine { SimplexMoments, ConjugateRecursion };

/// a_r for r <= order: the t^r coefficient collected from every v_n with
/// n <= r by expansion of exp(-t Q) and exact simplex-moment integration
/// (or the equivalent recursion, see CoefficientEngine).
CoefficientSeries small_time_coefficients(
    const PotentialMeasure& m, const CVec& x, const CVec& y, int order,
    CoefficientEngine engine = CoefficientEngine::SimplexMoments);

/// p = p_eps^harm x p^conj (free prefactor when lambda = 0).  The dilation
/// angle is the measure's epsilon.  The harmonic prefactor composes with a
/// case-2 contour rotation only at lambda = 0.
Complex full_kernel(const PotentialMeasure& m, double lambda, const SurfaceTime& t,
                    const CVec& x, const CVec& y, int order, Method method,
                    double beta = 0.0, const McOptions& mc = {});

/// Same kernel normalized so that its weak t -> e^{i eps} 0+ limit on
/// real-contour data is the identity: the surface prefactor (4 pi t)^{-nu/2}
/// replaces (4 pi e^{-i eps} t)^{-nu/2}, a constant factor e^{-i eps nu/2}.
/// This is the object to compare against a Schrodinger evolution at
/// arg t = pi/2 with real data.
Complex full_kernel_delta(const PotentialMeasure& m, double lambda,
                          const SurfaceTime& t, const CVec& x, const CVec& y,
                          int order, Method method, double beta = 0.0,
                          const McOptions& mc = {});

/// Shared-sample Monte Carlo evaluation of p^conj on a rectangular grid of
/// real scalar endpoints (nu = 1): every sample's integrand factorizes as
/// exp(x A_s) exp(y B_s), so one sample set serves the whole grid and the
/// accumulation is a sequence of rank-1 updates, run blockwise as matrix
/// products.  Values match v_n_monte_carlo term by term.
struct PConjGrid {
    std::vector<double> xs, ys;
    std::vector<std::vector<Complex>> values;  // [ix][iy]
    double max_std_error = 0.0;
};
PConjGrid p_conj_mc_grid(const PotentialMeasure& m, const SurfaceTime& t,
                         const std::vector<double>& xs, const std::vector<double>& ys,
                         int order, const McOptions& opt, double beta = 0.0);

/// Exact-path companion of p_conj_mc_grid for discrete measures.
PConjGrid p_conj_exact_grid(const PotentialMeasure& m, const SurfaceTime& t,
                            const std::vector<double>& xs,
                            const std::vector<double>& ys, int order,
                            double tol = 1e-10);

}  // namespace dk
