#include "deformkernel/oracle.hpp"

#include <cmath>

#include "deformkernel/errors.hpp"

namespace dk {

namespace {

// Thomas solve for a constant-offdiagonal tridiagonal system
// (d_i on the diagonal, off on both off-diagonals), in place.
void tridiag_solve(const std::vector<Complex>& diag, Complex off,
                   std::vector<Complex>& rhs, std::vector<Complex>& cp) {
    const std::size_t n = diag.size();
    cp.resize(n);
    cp[0] = off / diag[0];
    rhs[0] /= diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const Complex denom = diag[i] - off * cp[i - 1];
        cp[i] = off / denom;
        rhs[i] = (rhs[i] - off * rhs[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= cp[i] * rhs[i + 1];
}

struct CnWorkspace {
    std::vector<Complex> diag, rhs, cp, v;
};

// One Crank-Nicolson step of d_t u = scale (D2 + V) u on the interior
// points, Dirichlet boundaries.
void cn_step(std::vector<Complex>& u, const std::vector<Complex>& vpot, Complex scale,
             double dx, double dt, CnWorkspace& w) {
    const std::size_t n = u.size();
    const std::size_t m = n - 2;  // interior
    const Complex r = scale * dt / (2.0 * dx * dx);
    const Complex off = -r;

    w.diag.resize(m);
    w.rhs.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Complex vh = scale * 0.5 * dt * vpot[i + 1];
        w.diag[i] = Complex(1.0, 0.0) + 2.0 * r - vh;
        // rhs = (I + dt/2 A) u
        w.rhs[i] = (Complex(1.0, 0.0) - 2.0 * r + vh) * u[i + 1] +
                   r * (u[i] + u[i + 2]);
    }
    tridiag_solve(w.diag, off, w.rhs, w.cp);
    for (std::size_t i = 0; i < m; ++i) u[i + 1] = w.rhs[i];
    u[0] = Complex(0.0, 0.0);
    u[n - 1] = Complex(0.0, 0.0);
}

double boundary_level(const std::vector<Complex>& u) {
    double peak = 0.0;
    for (const Complex& c : u) peak = std::max(peak, std::abs(c));
    if (peak == 0.0) return 0.0;
    const double edge = std::max(std::abs(u[1]), std::abs(u[u.size() - 2]));
    return edge / peak;
}

}  // namespace

Grid1D::Grid1D(double x_min_, double x_max_, int n_points_, double dt_)
    : x_min(x_min_), x_max(x_max_), n_points(n_points_), dt(dt_) {
    if (n_points < 16) throw DomainError("Grid1D requires n_points >= 16");
    if (!(x_max > x_min) || !(dt > 0.0)) throw DomainError("Grid1D: bad extent or dt");
}

std::vector<double> Grid1D::xs() const {
    std::vector<double> out(n_points);
    const double h = dx();
    for (int i = 0; i < n_points; ++i) out[i] = x_min + h * i;
    return out;
}

EvolveResult evolve_heat(const std::function<Complex(double)>& potential,
                         const std::vector<Complex>& phi0, const Grid1D& grid,
                         double t_final) {
    if (static_cast<int>(phi0.size()) != grid.n_points)
        throw DomainError("evolve_heat: phi0 does not match the grid");
    if (!(t_final > 0.0)) throw DomainError("evolve_heat: t_final must be positive");

    const std::vector<double> xs = grid.xs();
    std::vector<Complex> vpot(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) vpot[i] = potential(xs[i]);

    const long steps = std::max(1L, std::lround(std::ceil(t_final / grid.dt - 1e-12)));
    const double dt = t_final / double(steps);

    EvolveResult out;
    out.psi = phi0;
    CnWorkspace w;
    for (long s = 0; s < steps; ++s) {
        cn_step(out.psi, vpot, Complex(1.0, 0.0), grid.dx(), dt, w);
        out.boundary_level = std::max(out.boundary_level, boundary_level(out.psi));
    }
    out.stability_warning = out.boundary_level > 1e-10;
    return out;
}

SchrodingerResult evolve_schrodinger(const std::function<double(double)>& potential,
                                     const std::vector<Complex>& phi0,
                                     const Grid1D& grid, double t_final) {
    if (static_cast<int>(phi0.size()) != grid.n_points)
        throw DomainError("evolve_schrodinger: phi0 does not match the grid");
    if (!(t_final > 0.0))
        throw DomainError("evolve_schrodinger: t_final must be positive");

    const std::vector<double> xs = grid.xs();
    std::vector<Complex> vpot(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) vpot[i] = Complex(potential(xs[i]), 0.0);

    const long steps = std::max(1L, std::lround(std::ceil(t_final / grid.dt - 1e-12)));
    const double dt = t_final / double(steps);

    SchrodingerResult out;
    out.psi = phi0;
    CnWorkspace w;
    auto norm_sq = [&] {
        double s = 0.0;
        for (const Complex& c : out.psi) s += std::norm(c);
        return s * grid.dx();
    };
    double prev = norm_sq();
    for (long s = 0; s < steps; ++s) {
        cn_step(out.psi, vpot, Complex(0.0, 1.0), grid.dx(), dt, w);
        const double cur = norm_sq();
        if (prev > 0.0)
            out.max_norm_drift = std::max(out.max_norm_drift,
                                          std::abs(cur - prev) / prev);
        prev = cur;
        out.boundary_level = std::max(out.boundary_level, boundary_level(out.psi));
    }
    out.stability_warning = out.boundary_level > 1e-10;
    return out;
}

double mehler_eigen_kernel(double lambda, double t, double x, double y, int n_terms,
                           double tol) {
    if (!(lambda > 0.0))
        throw DomainError("mehler_eigen_kernel: the eigen-expansion needs lambda > 0");
    if (!(t > 0.0)) throw DomainError("mehler_eigen_kernel: t must be positive");

    const double a = std::sqrt(lambda);
    const double z1 = std::sqrt(a) * x;
    const double z2 = std::sqrt(a) * y;
    const double w0 = std::pow(a / kPi, 0.25);

    // normalized Hermite functions by the stable three-term recurrence
    double hx_prev = 0.0, hx = w0 * std::exp(-0.5 * z1 * z1);
    double hy_prev = 0.0, hy = w0 * std::exp(-0.5 * z2 * z2);
    const double decay = std::exp(-2.0 * a * t);
    double weight = std::exp(-a * t);

    double sum = 0.0;
    for (int n = 0; n < n_terms; ++n) {
        sum += weight * hx * hy;
        weight *= decay;
        const double c1 = std::sqrt(2.0 / (n + 1.0));
        const double c2 = std::sqrt(double(n) / (n + 1.0));
        const double nx = c1 * z1 * hx - c2 * hx_prev;
        const double ny = c1 * z2 * hy - c2 * hy_prev;
        hx_prev = hx;
        hx = nx;
        hy_prev = hy;
        hy = ny;
    }
    // |psi_n| <= ~ a^{1/4}, so the tail is below sqrt(a) e^{-(2N+1)at}/(1-e^{-2at})
    const double tail = std::sqrt(a) * weight / (1.0 - decay);
    if (tail > tol)
        throw TruncationError("mehler_eigen_kernel: tail above tolerance; raise n_terms");
    return sum;
}

std::vector<Complex> kernel_action(
    const std::function<Complex(double, double)>& kernel_xy,
    const std::vector<Complex>& phi0, const Grid1D& grid,
    const std::vector<double>& out_xs) {
    if (static_cast<int>(phi0.size()) != grid.n_points)
        throw DomainError("kernel_action: phi0 does not match the grid");
    const std::vector<double> ys = grid.xs();
    const double h = grid.dx();
    std::vector<Complex> out(out_xs.size());
    for (std::size_t i = 0; i < out_xs.size(); ++i) {
        Complex acc(0.0, 0.0);
        for (std::size_t j = 0; j < ys.size(); ++j) {
            const double wj = (j == 0 || j + 1 == ys.size()) ? 0.5 : 1.0;
            acc += wj * kernel_xy(out_xs[i], ys[j]) * phi0[j];
        }
        out[i] = acc * h;
    }
    return out;
}

std::vector<Complex> kernel_action(
    const std::function<Complex(double, double)>& kernel_xy,
    const std::vector<Complex>& phi0, const Grid1D& grid) {
    return kernel_action(kernel_xy, phi0, grid, grid.xs());
}

}  // namespace dk
