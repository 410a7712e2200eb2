#include "deformkernel/deformation.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "deformation_internal.hpp"
#include "deformkernel/errors.hpp"
#include "deformkernel/exact_kernels.hpp"

namespace dk {

using detail::Frame;

namespace {

// Advance an atom-index tuple (odometer); returns false after the last one.
bool next_tuple(std::vector<int>& idx, int base) {
    for (std::size_t d = 0; d < idx.size(); ++d) {
        if (++idx[d] < base) return true;
        idx[d] = 0;
    }
    return false;
}

// Frame factor turning coefficients in e^{-i eps} t into coefficients in t:
// t~^r = e^{-i r pi(eps)} t^r.
Complex frame_phase(double eps_proj, int r) {
    return Complex(std::cos(-eps_proj * r), std::sin(-eps_proj * r));
}

// pi(eps) as an exact quarter multiple k of pi/2, when it is one.
std::optional<int> quarter_multiple(double eps_proj) {
    for (int k = 0; k < 4; ++k) {
        if (std::abs(signed_mod(eps_proj - k * kPi / 2.0, kTwoPi)) < 1e-12) return k;
    }
    return std::nullopt;
}

// i^k as an exact Gaussian rational.
RationalComplex i_pow(int k) {
    switch ((k % 4 + 4) % 4) {
        case 0: return RationalComplex(Rational(1), Rational(0));
        case 1: return RationalComplex(Rational(0), Rational(1));
        case 2: return RationalComplex(Rational(-1), Rational(0));
        default: return RationalComplex(Rational(0), Rational(-1));
    }
}

bool phases_vanish(const PotentialMeasure& m, const CVec& x, const CVec& y) {
    for (const Atom& a : m.atoms) {
        if (std::abs(dot(x, a.xi)) != 0.0) return false;
        if (std::abs(dot(y, a.xi)) != 0.0) return false;
    }
    return true;
}

// Per-tuple series evaluation shared by v_n_exact and the grids.
struct TupleWork {
    Complex weight;                 // product of atom weights
    Complex psi;                    // sum_j y~ . xi_j (phase constant exponent)
    TupleSeriesInput input;
};

}  // namespace

int choose_inner_order(const PotentialMeasure& m, int n, const SurfaceTime& t,
                       double tol) {
    if (m.kind != MeasureKind::Discrete)
        throw DomainError("exact path requires a discrete measure");
    const SurfaceTime t_rot =
        surface_mul(t, SurfaceTime::unit(kFourPi - m.epsilon));
    const double tq = t_rot.r * detail::q_max_bound(m, n);
    for (int order = 0; order <= 60; ++order) {
        if (detail::exp_tail_bound(tq, order) <= tol) return order;
    }
    throw TruncationError("requested tolerance unreachable below inner order 60");
}

Complex v_n_exact(const PotentialMeasure& m, int n, const SurfaceTime& t,
                  const CVec& x, const CVec& y, int inner_order, double tol) {
    if (m.kind != MeasureKind::Discrete)
        throw DomainError("v_n_exact requires a discrete measure");
    if (n == 0) return Complex(1.0, 0.0);

    const Frame f = detail::make_frame(m, t, x, y);
    const double tq = std::abs(f.tc) * detail::q_max_bound(m, n);
    if (detail::exp_tail_bound(tq, inner_order) > tol)
        throw TruncationError("tolerance unreachable at the given inner order");

    detail::tuple_count(m.atoms.size(), n);
    const int K = static_cast<int>(m.atoms.size());
    const double phase_tol = tol / (2.0 * n);
    const CVec diff = sub(f.x_rot, f.y_rot);

    Complex total(0.0, 0.0);
    std::vector<int> idx(n, 0);
    TupleSeriesInput in;
    in.n = n;
    in.nu = m.nu;
    in.order = inner_order;
    in.xi.resize(n);
    in.phi.resize(n);
    in.phase_order.resize(n);
    do {
        Complex w(1.0, 0.0);
        Complex psi(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            const Atom& a = m.atoms[idx[j]];
            w *= a.weight;
            psi += dot(f.y_rot, a.xi);
            in.xi[j] = a.xi;
            in.phi[j] = dot(diff, a.xi);
            in.phase_order[j] =
                detail::phase_order_for(std::abs(in.phi[j]), phase_tol);
        }
        const std::vector<Complex> series = tuple_simplex_series(in);
        Complex val(0.0, 0.0);
        Complex tp(1.0, 0.0);
        for (int mo = 0; mo <= inner_order; ++mo) {
            val += series[mo] * tp;
            tp *= f.tc;
        }
        total += w * std::exp(Complex(0.0, 1.0) * psi) * val;
    } while (next_tuple(idx, K));

    Complex tn(1.0, 0.0);
    for (int i = 0; i < n; ++i) tn *= f.tc;
    return tn * total;
}

Sector domain_of_validity(const PotentialMeasure& m, std::optional<double> beta) {
    if (m.kind == MeasureKind::Discrete) {
        if (beta && *beta != 0.0)
            throw DomainError("contour rotation applies to case-2 densities only");
        const CaseClassification cls = case_classification(m);
        return Sector(kPi / 2.0 - 2.0 * cls.theta, m.epsilon, kFourPi);
    }
    if (beta) {
        if (std::abs(*beta) >= kPi / 4.0)
            throw DomainError("contour angle must satisfy |beta| < pi/4");
        return Sector(kPi / 2.0, m.epsilon + 2.0 * *beta, kFourPi);
    }
    return Sector(kPi / 2.0 + 2.0 * m.alpha, m.epsilon, kFourPi);
}

PConjResult p_conj(const PotentialMeasure& m, const SurfaceTime& t, const CVec& x,
                   const CVec& y, int order, Method method, double beta,
                   const McOptions& mc) {
    if (order < 0) throw DomainError("p_conj requires order >= 0");
    detail::check_in_domain(m, t, beta);

    Complex sum(0.0, 0.0);
    TruncationReport report;
    report.order_used = order;
    double se_sq = 0.0;

    for (int n = 0; n <= order; ++n) {
        Complex vn;
        if (method == Method::Exact) {
            if (beta != 0.0)
                throw DomainError("contour rotation requires the Monte Carlo path");
            const int inner = choose_inner_order(m, n, t);
            vn = v_n_exact(m, n, t, x, y, inner);
        } else {
            const McEstimate est = v_n_monte_carlo(m, n, t, x, y, mc, beta);
            vn = est.value;
            se_sq += est.std_error * est.std_error;
        }
        sum += vn;
        if (n == order) report.last_term_norm = std::abs(vn);
    }
    if (method == Method::MonteCarlo) report.mc_std_error = std::sqrt(se_sq);
    return {sum, report};
}

std::optional<ExactPConj> p_conj_exact_rational(const PotentialMeasure& m,
                                                const SurfaceTime& t, const CVec& x,
                                                const CVec& y, int order,
                                                int inner_order) {
    if (m.kind != MeasureKind::Discrete) return std::nullopt;
    if (!phases_vanish(m, x, y)) return std::nullopt;
    const SurfaceTime t_rot = surface_mul(t, SurfaceTime::unit(kFourPi - m.epsilon));
    const auto quarter = quarter_multiple(t_rot.theta);
    if (!quarter) return std::nullopt;
    detail::check_in_domain(m, t, 0.0);

    // t~ = i^k r with exact rational modulus (doubles are dyadic rationals)
    const RationalComplex tc =
        i_pow(*quarter) * RationalComplex(Rational(t_rot.r), Rational(0));

    const int K = static_cast<int>(m.atoms.size());
    double qmax = detail::q_max_bound(m, order);
    ExactPConj out;
    out.truncation_free = (qmax == 0.0);
    out.terms.assign(order + 1, RationalComplex(0));
    out.sum = RationalComplex(0);

    for (int n = 0; n <= order; ++n) {
        detail::tuple_count(m.atoms.size(), n);
        RationalComplex term(0);
        std::vector<int> idx(n, 0);
        TupleSeriesExactInput in;
        in.n = n;
        in.nu = m.nu;
        in.order = out.truncation_free ? 0 : inner_order;
        in.xi.resize(n);
        do {
            RationalComplex w(1);
            for (int j = 0; j < n; ++j) {
                const Atom& a = m.atoms[idx[j]];
                w *= RationalComplex::from_complex(a.weight);
                in.xi[j].assign(m.nu, RationalComplex(0));
                for (int d = 0; d < m.nu; ++d)
                    in.xi[j][d] = RationalComplex::from_complex(a.xi[d]);
            }
            const auto series = tuple_simplex_series_exact(in);
            RationalComplex val(0);
            RationalComplex tp(1);
            for (std::size_t mo = 0; mo < series.size(); ++mo) {
                val += series[mo] * tp;
                tp *= tc;
            }
            term += w * val;
        } while (n > 0 && next_tuple(idx, K));
        RationalComplex tn(1);
        for (int i = 0; i < n; ++i) tn *= tc;
        out.terms[n] = tn * term;
        out.sum += out.terms[n];
    }
    return out;
}

CoefficientSeries small_time_coefficients(const PotentialMeasure& m, const CVec& x,
                                          const CVec& y, int order,
                                          CoefficientEngine engine) {
    if (m.kind != MeasureKind::Discrete)
        throw DomainError("small_time_coefficients requires a discrete measure");
    if (order < 0) throw DomainError("order must be >= 0");

    const double eps_proj = project_2pi(m.epsilon);
    const auto quarter = quarter_multiple(eps_proj);
    const bool exact_ok = quarter && phases_vanish(m, x, y);

    if (engine == CoefficientEngine::ConjugateRecursion)
        return detail::coefficients_by_recursion(m, x, y, order, exact_ok,
                                                 exact_ok ? *quarter : 0);

    const int K = static_cast<int>(m.atoms.size());

    CoefficientSeries out;
    out.coefficients.assign(order + 1, Complex(0.0, 0.0));

    if (exact_ok) {
        std::vector<RationalComplex> acc(order + 1, RationalComplex(0));
        for (int n = 0; n <= order; ++n) {
            detail::tuple_count(m.atoms.size(), n);
            std::vector<int> idx(n, 0);
            TupleSeriesExactInput in;
            in.n = n;
            in.nu = m.nu;
            in.order = order - n;
            in.xi.resize(n);
            do {
                RationalComplex w(1);
                for (int j = 0; j < n; ++j) {
                    const Atom& a = m.atoms[idx[j]];
                    w *= RationalComplex::from_complex(a.weight);
                    in.xi[j].assign(m.nu, RationalComplex(0));
                    for (int d = 0; d < m.nu; ++d)
                        in.xi[j][d] = RationalComplex::from_complex(a.xi[d]);
                }
                const auto series = tuple_simplex_series_exact(in);
                for (int mo = 0; mo <= order - n; ++mo) acc[n + mo] += w * series[mo];
            } while (n > 0 && next_tuple(idx, K));
        }
        out.exact = true;
        out.exact_coefficients.assign(order + 1, RationalComplex(0));
        for (int r = 0; r <= order; ++r) {
            // frame factor: t~^r = e^{-i r pi(eps)} t^r with pi(eps) = k pi/2
            out.exact_coefficients[r] = i_pow(-(*quarter) * r) * acc[r];
            out.coefficients[r] = out.exact_coefficients[r].to_complex();
        }
        return out;
    }

    // floating path: phases expanded per slot
    const Frame f = detail::make_frame(m, SurfaceTime(1.0, m.epsilon), x, y);
    const CVec diff = sub(f.x_rot, f.y_rot);
    std::vector<Complex> acc(order + 1, Complex(0.0, 0.0));
    for (int n = 0; n <= order; ++n) {
        detail::tuple_count(m.atoms.size(), n);
        std::vector<int> idx(n, 0);
        TupleSeriesInput in;
        in.n = n;
        in.nu = m.nu;
        in.order = order - n;
        in.xi.resize(n);
        in.phi.resize(n);
        in.phase_order.resize(n);
        const double phase_tol = 1e-14 / std::max(1, n);
        do {
            Complex w(1.0, 0.0);
            Complex psi(0.0, 0.0);
            for (int j = 0; j < n; ++j) {
                const Atom& a = m.atoms[idx[j]];
                w *= a.weight;
                psi += dot(f.y_rot, a.xi);
                in.xi[j] = a.xi;
                in.phi[j] = dot(diff, a.xi);
                in.phase_order[j] =
                    detail::phase_order_for(std::abs(in.phi[j]), phase_tol);
            }
            const auto series = tuple_simplex_series(in);
            const Complex wp = w * std::exp(Complex(0.0, 1.0) * psi);
            for (int mo = 0; mo <= order - n; ++mo) acc[n + mo] += wp * series[mo];
        } while (n > 0 && next_tuple(idx, K));
    }
    for (int r = 0; r <= order; ++r)
        out.coefficients[r] = frame_phase(eps_proj, r) * acc[r];
    return out;
}

Complex full_kernel(const PotentialMeasure& m, double lambda, const SurfaceTime& t,
                    const CVec& x, const CVec& y, int order, Method method,
                    double beta, const McOptions& mc) {
    if (m.kind == MeasureKind::Gaussian && beta != 0.0 && lambda != 0.0)
        throw DomainError(
            "the harmonic prefactor does not compose with a case-2 contour rotation");
    const HarmonicParams params{lambda, m.nu};
    const Complex pref = p_harm_rotated(t, x, y, params, m.epsilon);
    return pref * p_conj(m, t, x, y, order, method, beta, mc).value;
}

Complex full_kernel_delta(const PotentialMeasure& m, double lambda,
                          const SurfaceTime& t, const CVec& x, const CVec& y,
                          int order, Method method, double beta,
                          const McOptions& mc) {
    const double arg = -0.5 * m.epsilon * m.nu;
    const Complex constant(std::cos(arg), std::sin(arg));
    return constant * full_kernel(m, lambda, t, x, y, order, method, beta, mc);
}

PConjGrid p_conj_exact_grid(const PotentialMeasure& m, const SurfaceTime& t,
                            const std::vector<double>& xs,
                            const std::vector<double>& ys, int order, double tol) {
    if (m.kind != MeasureKind::Discrete)
        throw DomainError("exact grid requires a discrete measure");
    if (m.nu != 1) throw DomainError("grid evaluation is one-dimensional");
    detail::check_in_domain(m, t, 0.0);

    const Frame f = detail::make_frame(m, t, CVec{Complex(0.0, 0.0)},
                                       CVec{Complex(0.0, 0.0)});
    const Complex half(std::cos(-0.5 * m.epsilon), std::sin(-0.5 * m.epsilon));
    const int K = static_cast<int>(m.atoms.size());

    PConjGrid grid;
    grid.xs = xs;
    grid.ys = ys;
    grid.values.assign(xs.size(), std::vector<Complex>(ys.size(), Complex(1.0, 0.0)));

    // v_n factorizes as e^{i y~ . P_tuple} G_tuple((x - y)) with P = sum xi_j:
    // the simplex series depends on the pair only through x - y, so grids with
    // repeated differences share the engine runs.
    for (int n = 1; n <= order; ++n) {
        detail::tuple_count(m.atoms.size(), n);
        const int inner = choose_inner_order(m, n, t, tol);
        const double phase_tol = tol / (2.0 * n);
        std::vector<int> idx(n, 0);
        TupleSeriesInput in;
        in.n = n;
        in.nu = 1;
        in.order = inner;
        in.xi.resize(n);
        in.phi.resize(n);
        in.phase_order.resize(n);
        Complex tn(1.0, 0.0);
        for (int i = 0; i < n; ++i) tn *= f.tc;
        do {
            Complex w(1.0, 0.0);
            Complex xi_sum(0.0, 0.0);
            for (int j = 0; j < n; ++j) {
                const Atom& a = m.atoms[idx[j]];
                w *= a.weight;
                xi_sum += a.xi[0];
            }
            // G per distinct difference x - y
            std::unordered_map<long long, Complex> g_cache;
            auto g_of_diff = [&](double d) {
                const long long key = std::llround(d * 1e9);
                auto it = g_cache.find(key);
                if (it != g_cache.end()) return it->second;
                const Complex phi_base = half * Complex(d, 0.0);
                for (int j = 0; j < n; ++j) {
                    const Atom& a = m.atoms[idx[j]];
                    in.xi[j] = a.xi;
                    in.phi[j] = phi_base * a.xi[0];
                    in.phase_order[j] =
                        detail::phase_order_for(std::abs(in.phi[j]), phase_tol);
                }
                const auto series = tuple_simplex_series(in);
                Complex val(0.0, 0.0);
                Complex tp(1.0, 0.0);
                for (int mo = 0; mo <= inner; ++mo) {
                    val += series[mo] * tp;
                    tp *= f.tc;
                }
                g_cache.emplace(key, val);
                return val;
            };
            for (std::size_t iy = 0; iy < ys.size(); ++iy) {
                const Complex ph =
                    w * std::exp(Complex(0.0, 1.0) * half * ys[iy] * xi_sum);
                for (std::size_t ix = 0; ix < xs.size(); ++ix) {
                    grid.values[ix][iy] += tn * ph * g_of_diff(xs[ix] - ys[iy]);
                }
            }
        } while (next_tuple(idx, K));
    }
    return grid;
}

}  // namespace dk
