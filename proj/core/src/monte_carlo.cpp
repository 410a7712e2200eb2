#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "deformation_internal.hpp"
#include "deformkernel/deformation.hpp"
#include "deformkernel/errors.hpp"
#include "deformkernel/parallel.hpp"

namespace dk {

namespace {

constexpr std::uint64_t kBlock = 4096;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 block_rng(std::uint64_t seed, int n, std::uint64_t block) {
    const std::uint64_t s =
        splitmix64(seed ^ splitmix64(0x5deece66dULL * (n + 1) + block));
    return std::mt19937_64(s);
}

struct SampleScratch {
    std::vector<double> u;
    std::vector<CVec> xi;
};

// Symmetrized bridge form of the ordered-simplex integral: for i.i.d.
// uniforms, s_{j and l}(1 - s_{j or l}) = min(u_j, u_l) - u_j u_l and the
// ordered integral equals 1/n! times the cube expectation.
Complex bridge_form(const std::vector<double>& u, const std::vector<CVec>& xi, int n) {
    Complex q(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
        for (int l = j; l < n; ++l) {
            const double k = std::min(u[j], u[l]) - u[j] * u[l];
            const Complex d = dot(xi[j], xi[l]);
            q += (j == l) ? k * d : 2.0 * k * d;
        }
    }
    return q;
}

struct McConfig {
    // per-slot draw: fills xi[j] and returns the importance weight factor
    int n = 0;
    int nu = 1;
    Complex t_factor;      // e^{-2 i beta} tc
    Complex phase_rot;     // i e^{-i beta}
    CVec x_rot, y_rot;
    // discrete
    const PotentialMeasure* m = nullptr;
    double mass = 0.0;
    std::vector<double> cdf;
    // gaussian
    double beta = 0.0;
    double sigma = 0.0;      // sampling std dev per component
    double reweight_mod = 0.0;
    double reweight_arg_scale = 0.0;  // sin(2 beta)/(4 gamma)
};

Complex sample_value(const McConfig& cfg, std::mt19937_64& rng, SampleScratch& s) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int n = cfg.n;
    for (int j = 0; j < n; ++j) s.u[j] = unif(rng);

    Complex weight(1.0, 0.0);
    if (cfg.m->kind == MeasureKind::Discrete) {
        for (int j = 0; j < n; ++j) {
            const double r = unif(rng) * cfg.mass;
            std::size_t k = 0;
            while (k + 1 < cfg.cdf.size() && r > cfg.cdf[k]) ++k;
            const Atom& a = cfg.m->atoms[k];
            s.xi[j] = a.xi;
            weight *= cfg.mass * a.weight / std::abs(a.weight);
        }
    } else {
        std::normal_distribution<double> gauss(0.0, cfg.sigma);
        for (int j = 0; j < n; ++j) {
            double norm_sq = 0.0;
            for (int d = 0; d < cfg.nu; ++d) {
                const double g = gauss(rng);
                s.xi[j][d] = Complex(g, 0.0);
                norm_sq += g * g;
            }
            weight *= cfg.reweight_mod *
                      std::exp(Complex(0.0, cfg.reweight_arg_scale * norm_sq));
        }
    }

    Complex phase_exp(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
        for (int d = 0; d < cfg.nu; ++d)
            phase_exp += (cfg.y_rot[d] + s.u[j] * (cfg.x_rot[d] - cfg.y_rot[d])) *
                         s.xi[j][d];
    }
    const Complex q = bridge_form(s.u, s.xi, n);
    return weight * std::exp(cfg.phase_rot * phase_exp - cfg.t_factor * q);
}

McConfig make_config(const PotentialMeasure& m, int n, const detail::Frame& f,
                     double beta) {
    McConfig cfg;
    cfg.n = n;
    cfg.nu = m.nu;
    cfg.m = &m;
    cfg.beta = beta;
    cfg.t_factor = f.tc * Complex(std::cos(-2.0 * beta), std::sin(-2.0 * beta));
    cfg.phase_rot = Complex(0.0, 1.0) * Complex(std::cos(-beta), std::sin(-beta));
    cfg.x_rot = f.x_rot;
    cfg.y_rot = f.y_rot;
    if (m.kind == MeasureKind::Discrete) {
        cfg.mass = m.total_mass();
        double run = 0.0;
        for (const Atom& a : m.atoms) {
            run += std::abs(a.weight);
            cfg.cdf.push_back(run);
        }
    } else {
        const double c2b = std::cos(2.0 * beta);
        cfg.sigma = std::sqrt(2.0 * m.gamma / c2b);
        cfg.reweight_mod = std::pow(c2b, 0.5 * m.nu);
        cfg.reweight_arg_scale = std::sin(2.0 * beta) / (4.0 * m.gamma);
    }
    return cfg;
}

}  // namespace

McEstimate v_n_monte_carlo(const PotentialMeasure& m, int n, const SurfaceTime& t,
                           const CVec& x, const CVec& y, const McOptions& opt,
                           double beta) {
    if (n == 0) return {Complex(1.0, 0.0), 0.0};
    detail::check_in_domain(m, t, beta);

    const detail::Frame f = detail::make_frame(m, t, x, y);
    const McConfig cfg = make_config(m, n, f, beta);

    const std::uint64_t blocks = (opt.samples + kBlock - 1) / kBlock;
    std::vector<Complex> block_sum(blocks);
    std::vector<double> block_sq(blocks);

    parallel_for(blocks, [&](std::size_t b) {
        std::mt19937_64 rng = block_rng(opt.seed, n, b);
        SampleScratch s;
        s.u.resize(n);
        s.xi.assign(n, CVec(m.nu, Complex(0.0, 0.0)));
        Complex acc(0.0, 0.0);
        double sq = 0.0;
        for (std::uint64_t i = 0; i < kBlock; ++i) {
            const Complex z = sample_value(cfg, rng, s);
            acc += z;
            sq += std::norm(z);
        }
        block_sum[b] = acc;
        block_sq[b] = sq;
    });

    Complex total(0.0, 0.0);
    double total_sq = 0.0;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        total += block_sum[b];
        total_sq += block_sq[b];
    }
    const double count = double(blocks) * double(kBlock);
    const Complex mean = total / count;
    const double var = std::max(0.0, total_sq / count - std::norm(mean));

    // v_n = e^{-i nu n beta} t~^n / n! * E[z]
    Complex outer(std::cos(-m.nu * n * beta), std::sin(-m.nu * n * beta));
    for (int i = 0; i < n; ++i) outer *= f.tc / double(i + 1);
    return {outer * mean, std::abs(outer) * std::sqrt(var / count)};
}

PConjGrid p_conj_mc_grid(const PotentialMeasure& m, const SurfaceTime& t,
                         const std::vector<double>& xs, const std::vector<double>& ys,
                         int order, const McOptions& opt, double beta) {
    if (m.nu != 1) throw DomainError("grid evaluation is one-dimensional");
    if (xs.size() < 2 || ys.size() < 2)
        throw DomainError("grid evaluation needs at least two points per axis");
    for (std::size_t i = 2; i < xs.size(); ++i)
        if (std::abs((xs[i] - xs[i - 1]) - (xs[1] - xs[0])) > 1e-12)
            throw DomainError("grid evaluation requires uniform x spacing");
    for (std::size_t i = 2; i < ys.size(); ++i)
        if (std::abs((ys[i] - ys[i - 1]) - (ys[1] - ys[0])) > 1e-12)
            throw DomainError("grid evaluation requires uniform y spacing");
    detail::check_in_domain(m, t, beta);

    const detail::Frame f =
        detail::make_frame(m, t, CVec{Complex(0.0, 0.0)}, CVec{Complex(0.0, 0.0)});
    const Complex half(std::cos(-0.5 * m.epsilon), std::sin(-0.5 * m.epsilon));

    const int NX = static_cast<int>(xs.size());
    const int NY = static_cast<int>(ys.size());
    const double dx = xs[1] - xs[0];
    const double dy = ys[1] - ys[0];

    Eigen::MatrixXcd total = Eigen::MatrixXcd::Ones(NX, NY);  // n = 0 term
    double se_sq_max = 0.0;

    for (int n = 1; n <= order; ++n) {
        McConfig cfg = make_config(m, n, f, beta);
        cfg.x_rot = CVec{Complex(0.0, 0.0)};  // phases handled per pair below
        cfg.y_rot = CVec{Complex(0.0, 0.0)};

        const std::uint64_t blocks = (opt.samples + kBlock - 1) / kBlock;
        std::vector<Eigen::MatrixXcd> partial(blocks);

        parallel_for(blocks, [&](std::size_t b) {
            std::mt19937_64 rng = block_rng(opt.seed, n, b);
            SampleScratch s;
            s.u.resize(n);
            s.xi.assign(n, CVec(1, Complex(0.0, 0.0)));
            std::uniform_real_distribution<double> unif(0.0, 1.0);

            Eigen::MatrixXcd phix(kBlock, NX), phiy(kBlock, NY);
            for (std::uint64_t i = 0; i < kBlock; ++i) {
                // draw (u, xi) and the pair-independent factor
                for (int j = 0; j < n; ++j) s.u[j] = unif(rng);
                Complex weight(1.0, 0.0);
                if (m.kind == MeasureKind::Discrete) {
                    for (int j = 0; j < n; ++j) {
                        const double r = unif(rng) * cfg.mass;
                        std::size_t k = 0;
                        while (k + 1 < cfg.cdf.size() && r > cfg.cdf[k]) ++k;
                        const Atom& a = m.atoms[k];
                        s.xi[j][0] = a.xi[0];
                        weight *= cfg.mass * a.weight / std::abs(a.weight);
                    }
                } else {
                    std::normal_distribution<double> gauss(0.0, cfg.sigma);
                    for (int j = 0; j < n; ++j) {
                        const double g = gauss(rng);
                        s.xi[j][0] = Complex(g, 0.0);
                        weight *= cfg.reweight_mod *
                                  std::exp(Complex(0.0, cfg.reweight_arg_scale * g * g));
                    }
                }
                const Complex q = bridge_form(s.u, s.xi, n);
                const Complex base = weight * std::exp(-cfg.t_factor * q);

                // phase exp(i e^{-i beta} (y~ (P - W) + x~ W)) = e^{x A} e^{y B}
                Complex P(0.0, 0.0), W(0.0, 0.0);
                for (int j = 0; j < n; ++j) {
                    P += s.xi[j][0];
                    W += s.u[j] * s.xi[j][0];
                }
                const Complex A = cfg.phase_rot * half * W;
                const Complex B = cfg.phase_rot * half * (P - W);

                // iterate phases along the uniform grids
                const Complex stepx = std::exp(A * dx);
                Complex px = base * std::exp(A * xs[0]);
                for (int ix = 0; ix < NX; ++ix) {
                    phix(i, ix) = px;
                    px *= stepx;
                }
                const Complex stepy = std::exp(B * dy);
                Complex py = std::exp(B * ys[0]);
                for (int iy = 0; iy < NY; ++iy) {
                    phiy(i, iy) = py;
                    py *= stepy;
                }
            }
            partial[b] = phix.transpose() * phiy;
        });

        Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(NX, NY);
        Eigen::MatrixXd sq = Eigen::MatrixXd::Zero(NX, NY);
        for (std::uint64_t b = 0; b < blocks; ++b) {
            const Eigen::MatrixXcd bm = partial[b] / double(kBlock);
            mean += bm;
            sq += bm.cwiseAbs2();
        }
        mean /= double(blocks);
        sq /= double(blocks);

        Complex outer(std::cos(-m.nu * n * beta), std::sin(-m.nu * n * beta));
        for (int i = 0; i < n; ++i) outer *= f.tc / double(i + 1);
        total += outer * mean;

        const double se_block =
            (sq - mean.cwiseAbs2()).cwiseMax(0.0).maxCoeff() / double(blocks);
        se_sq_max += std::norm(outer) * se_block;
    }

    PConjGrid grid;
    grid.xs = xs;
    grid.ys = ys;
    grid.max_std_error = std::sqrt(se_sq_max);
    grid.values.assign(NX, std::vector<Complex>(NY));
    for (int ix = 0; ix < NX; ++ix)
        for (int iy = 0; iy < NY; ++iy) grid.values[ix][iy] = total(ix, iy);
    return grid;
}

}  // namespace dk
