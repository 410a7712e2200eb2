#include "deformkernel/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>

namespace dk {

namespace {

template <typename T>
T simpson_rec(const std::function<T(double)>& f, double a, double m, double b, T fa,
              T fm, T fb, T whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const T flm = f(lm), frm = f(rm);
    const T left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const T right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const T delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec<T>(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec<T>(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename T>
T simpson(const std::function<T(double)>& f, double a, double b, double tol,
          int max_depth) {
    const double m = 0.5 * (a + b);
    const T fa = f(a), fm = f(m), fb = f(b);
    const T whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec<T>(f, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    return simpson<double>(f, a, b, tol, max_depth);
}

Complex adaptive_simpson_c(const std::function<Complex(double)>& f, double a, double b,
                           double tol, int max_depth) {
    return simpson<Complex>(f, a, b, tol, max_depth);
}

const GaussLaguerreRule& gauss_laguerre(int n) {
    static std::map<int, GaussLaguerreRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Golub-Welsch: Jacobi matrix of the Laguerre recurrence,
    // alpha_k = 2k + 1, beta_k = k.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        J(k, k) = 2.0 * k + 1.0;
        if (k + 1 < n) {
            const double off = static_cast<double>(k + 1);
            J(k, k + 1) = off;
            J(k + 1, k) = off;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    GaussLaguerreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int k = 0; k < n; ++k) {
        rule.nodes[k] = es.eigenvalues()(k);
        const double v0 = es.eigenvectors()(0, k);
        rule.weights[k] = v0 * v0;  // moment mu_0 = 1
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

double unit_sphere_area(int nu) {
    return 2.0 * std::pow(kPi, 0.5 * nu) / std::tgamma(0.5 * nu);
}

double radial_exp_integral(double a, double c1, int nu) {
    if (nu == 1) {
        // 2 int_0^inf e^{-a r^2 + c1 r} dr
        const double s = std::sqrt(a);
        return std::sqrt(kPi) / s * std::exp(c1 * c1 / (4.0 * a)) *
               std::erfc(-c1 / (2.0 * s));
    }
    // radial reduction; the integrand peaks at r* = c1/(2a) and is negligible
    // once a r^2 - c1 r > 750
    const double rstar = std::max(c1, 0.0) / (2.0 * a);
    const double rmax = rstar + (std::abs(c1) + std::sqrt(c1 * c1 + 4.0 * a * 750.0)) / (2.0 * a) + 10.0 / std::sqrt(a);
    const double area = unit_sphere_area(nu);
    auto f = [&](double r) {
        return std::pow(r, nu - 1) * std::exp(-a * r * r + c1 * r);
    };
    return area * adaptive_simpson(f, 0.0, rmax, 1e-13 * std::exp(c1 * c1 / (4.0 * a)));
}

}  // namespace dk
