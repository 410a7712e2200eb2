#include <array>
#include <cmath>
#include <unordered_map>

#include "deformation_internal.hpp"
#include "deformkernel/deformation.hpp"
#include "deformkernel/errors.hpp"

// Conjugate-heat recursion engine for small-time coefficients.  Writing the
// kernel as p^free(t, x, y) q(t, x, y) and expanding q = sum a_r t^r turns
// the heat equation into the triangular recursion
//
//   r a_r + z . grad a_r = lap a_{r-1} + c(y + z) a_{r-1},  z = x - y, a_0 = 1.
//
// For c = sum w_k exp(i x.xi_k) the a_r live in the algebra of truncated
// power series attached to the frequencies Lambda = sum over a multiset of
// atoms: a_r = sum_mu P_{r,mu}(z) e^{i Lambda_mu . z}, and the solve
//
//   (r + z.grad + i Lambda.z) P = R
//
// is triangular in the total degree: P_alpha = (R_alpha - i sum_d Lambda_d
// P_{alpha - e_d}) / (r + |alpha|).  The chain does not terminate (a_r is
// not an exponential polynomial for x != y), so degrees are truncated with
// the factorial tail bound |P_alpha z^alpha| <~ |Lambda z|^alpha / alpha!.

namespace dk {

namespace {

constexpr int kMaxAtomKinds = 10;  // multiset key packs 6 bits per atom

template <typename S>
struct RTraits;

template <>
struct RTraits<Complex> {
    static Complex div_int(const Complex& c, long d) { return c / double(d); }
    static bool negligible(const Complex& c) { return std::abs(c) < 1e-300; }
};

template <>
struct RTraits<RationalComplex> {
    static RationalComplex div_int(RationalComplex c, long d) {
        c.re /= d;
        c.im /= d;
        return c;
    }
    static bool negligible(const RationalComplex& c) { return c.is_zero(); }
};

// Dense polynomial in z over multi-indices |alpha| <= deg, nu <= 4.
template <typename S>
struct Poly {
    int nu = 1;
    int deg = 0;
    std::vector<S> c;  // flattened over the multi-index enumeration

    static std::size_t count(int nu, int deg) {
        std::size_t n = 1;
        for (int d = 1; d <= nu; ++d) n = n * (deg + d) / d;  // C(deg + nu, nu)
        return n;
    }
};

// Multi-index enumeration order: graded lexicographic, cached per (nu, deg).
struct AlphaTable {
    std::vector<std::array<int, 4>> alphas;
    std::unordered_map<std::uint32_t, int> index;

    static std::uint32_t key(const std::array<int, 4>& a) {
        return std::uint32_t(a[0]) | (std::uint32_t(a[1]) << 8) |
               (std::uint32_t(a[2]) << 16) | (std::uint32_t(a[3]) << 24);
    }
    static const AlphaTable& get(int nu, int deg);
};

const AlphaTable& AlphaTable::get(int nu, int deg) {
    static std::unordered_map<int, AlphaTable> cache;
    const int k = nu * 1024 + deg;
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    AlphaTable t;
    std::array<int, 4> a{};
    auto rec = [&](auto&& self, int d, int left) -> void {
        if (d == nu - 1) {
            a[d] = left;
            t.index.emplace(key(a), int(t.alphas.size()));
            t.alphas.push_back(a);
            a[d] = 0;
            return;
        }
        for (int g = left; g >= 0; --g) {
            a[d] = g;
            self(self, d + 1, left - g);
        }
        a[d] = 0;
    };
    for (int total = 0; total <= deg; ++total) rec(rec, 0, total);
    return cache.emplace(k, std::move(t)).first->second;
}

template <typename S>
struct RecursionEngine {
    int nu;
    int order;
    int eval_deg;                       // extra degrees kept for evaluation
    std::vector<std::vector<S>> xi;     // atom frequencies [k][d]
    std::vector<S> weight;              // w_k (times constant phase)
    std::vector<S> z;                   // evaluation point x - y (rotated frame)

    // state: multiset key -> Poly coefficients at the current order r
    using StateMap = std::unordered_map<std::uint64_t, Poly<S>>;

    static std::uint64_t bump(std::uint64_t mu, int k) {
        return mu + (std::uint64_t(1) << (6 * k));
    }
    std::vector<S> lambda_of(std::uint64_t mu) const {
        std::vector<S> lam(nu, S(0));
        for (std::size_t k = 0; k < xi.size(); ++k) {
            const int cnt = int((mu >> (6 * k)) & 0x3f);
            for (int d = 0; d < nu; ++d)
                for (int i = 0; i < cnt; ++i) lam[d] += xi[k][d];
        }
        return lam;
    }

    int degree_cap(int r) const { return 2 * (order - r) + eval_deg; }

    // (lap + 2 i Lambda.grad - Lambda.Lambda) P, truncated to deg_out.
    Poly<S> apply_laplace(const Poly<S>& p, const std::vector<S>& lam,
                          int deg_out) const {
        const AlphaTable& tin = AlphaTable::get(nu, p.deg);
        const AlphaTable& tout = AlphaTable::get(nu, deg_out);
        Poly<S> out;
        out.nu = nu;
        out.deg = deg_out;
        out.c.assign(Poly<S>::count(nu, deg_out), S(0));
        S lam_sq(0);
        for (int d = 0; d < nu; ++d) lam_sq += lam[d] * lam[d];
        const S i_unit = unit_i();
        for (std::size_t idx = 0; idx < p.c.size(); ++idx) {
            if (RTraits<S>::negligible(p.c[idx])) continue;
            const auto& a = tin.alphas[idx];
            int total = a[0] + a[1] + a[2] + a[3];
            // -Lambda^2 P
            if (total <= deg_out)
                out.c[tout.index.at(AlphaTable::key(a))] += S(0) - lam_sq * p.c[idx];
            for (int d = 0; d < nu; ++d) {
                if (a[d] >= 1 && total - 1 <= deg_out) {
                    // 2 i Lambda_d dP/dz_d
                    auto b = a;
                    b[d] -= 1;
                    S term = S(2) * i_unit * lam[d] * p.c[idx] * S(a[d]);
                    out.c[tout.index.at(AlphaTable::key(b))] += term;
                }
                if (a[d] >= 2 && total - 2 <= deg_out) {
                    auto b = a;
                    b[d] -= 2;
                    out.c[tout.index.at(AlphaTable::key(b))] +=
                        p.c[idx] * S(a[d]) * S(a[d] - 1);
                }
            }
        }
        return out;
    }

    static S unit_i() {
        if constexpr (std::is_same_v<S, Complex>) return Complex(0.0, 1.0);
        else return RationalComplex(Rational(0), Rational(1));
    }

    // solve (r + z.grad + i Lambda.z) P = R, truncated to R's degree
    Poly<S> solve(const Poly<S>& rhs, const std::vector<S>& lam, int r) const {
        const AlphaTable& t = AlphaTable::get(nu, rhs.deg);
        Poly<S> p;
        p.nu = nu;
        p.deg = rhs.deg;
        p.c.assign(rhs.c.size(), S(0));
        const S i_unit = unit_i();
        for (std::size_t idx = 0; idx < t.alphas.size(); ++idx) {
            const auto& a = t.alphas[idx];
            const int total = a[0] + a[1] + a[2] + a[3];
            S val = rhs.c[idx];
            for (int d = 0; d < nu; ++d) {
                if (a[d] >= 1 && !RTraits<S>::negligible(lam[d])) {
                    auto b = a;
                    b[d] -= 1;
                    val += S(0) - i_unit * lam[d] * p.c[t.index.at(AlphaTable::key(b))];
                }
            }
            p.c[idx] = RTraits<S>::div_int(val, r + total);
        }
        return p;
    }

    S eval_at_z(const Poly<S>& p, const std::vector<S>& lam) const {
        const AlphaTable& t = AlphaTable::get(nu, p.deg);
        // e^{i Lambda . z} prefactor is applied by the caller (float path);
        // here the plain polynomial value
        S sum(0);
        for (std::size_t idx = 0; idx < p.c.size(); ++idx) {
            if (RTraits<S>::negligible(p.c[idx])) continue;
            S term = p.c[idx];
            const auto& a = t.alphas[idx];
            for (int d = 0; d < nu; ++d)
                for (int i = 0; i < a[d]; ++i) term = term * z[d];
            sum += term;
        }
        (void)lam;
        return sum;
    }

    // run the recursion, reporting a_r(z) (without frame rotation)
    std::vector<S> run(const std::function<S(const std::vector<S>&)>& exp_ilz) {
        StateMap prev;
        Poly<S> one;
        one.nu = nu;
        one.deg = 0;
        one.c.assign(1, S(1));
        prev.emplace(0, one);

        std::vector<S> a(order + 1, S(0));
        a[0] = S(1);

        for (int r = 1; r <= order; ++r) {
            const int cap = degree_cap(r);
            StateMap rhs;
            auto add_poly = [&](std::uint64_t mu, const Poly<S>& q, const S& factor) {
                auto [it, inserted] = rhs.emplace(mu, Poly<S>{});
                Poly<S>& dst = it->second;
                if (inserted) {
                    dst.nu = nu;
                    dst.deg = cap;
                    dst.c.assign(Poly<S>::count(nu, cap), S(0));
                }
                const AlphaTable& tin = AlphaTable::get(nu, q.deg);
                const AlphaTable& tout = AlphaTable::get(nu, dst.deg);
                for (std::size_t idx = 0; idx < q.c.size(); ++idx) {
                    if (RTraits<S>::negligible(q.c[idx])) continue;
                    const auto& al = tin.alphas[idx];
                    if (al[0] + al[1] + al[2] + al[3] > dst.deg) continue;
                    dst.c[tout.index.at(AlphaTable::key(al))] += factor * q.c[idx];
                }
            };

            for (const auto& [mu, p] : prev) {
                const std::vector<S> lam = lambda_of(mu);
                add_poly(mu, apply_laplace(p, lam, cap), S(1));
                for (std::size_t k = 0; k < xi.size(); ++k)
                    add_poly(bump(mu, int(k)), p, weight[k]);
            }

            StateMap curs;
            for (auto& [mu, q] : rhs) {
                const std::vector<S> lam = lambda_of(mu);
                curs.emplace(mu, solve(q, lam, r));
            }
            // a_r = sum_mu P_{r,mu}(z) e^{i Lambda_mu . z}
            S total(0);
            for (const auto& [mu, p] : curs) {
                const std::vector<S> lam = lambda_of(mu);
                total += eval_at_z(p, lam) * exp_ilz(lam);
            }
            a[r] = total;
            prev.swap(curs);
        }
        return a;
    }
};

}  // namespace

namespace detail {

CoefficientSeries coefficients_by_recursion(const PotentialMeasure& m, const CVec& x,
                                            const CVec& y, int order, bool exact_ok,
                                            int quarter) {
    if (m.atoms.size() > kMaxAtomKinds)
        throw DomainError("recursion engine supports at most 10 distinct atoms");
    if (order > 60) throw TruncationError("coefficient order cap is 60");

    const Frame f = make_frame(m, SurfaceTime(1.0, m.epsilon), x, y);
    CoefficientSeries out;
    out.coefficients.assign(order + 1, Complex(0.0, 0.0));

    if (exact_ok) {
        // the coefficients depend on (x, y) only through the dots x.xi_k and
        // y.xi_k, all zero under the exact gate, so evaluate at z = 0
        RecursionEngine<RationalComplex> eng;
        eng.nu = m.nu;
        eng.order = order;
        eng.eval_deg = 0;
        eng.z.assign(m.nu, RationalComplex(0));
        for (const Atom& a : m.atoms) {
            std::vector<RationalComplex> c(m.nu);
            for (int d = 0; d < m.nu; ++d) c[d] = RationalComplex::from_complex(a.xi[d]);
            eng.xi.push_back(std::move(c));
            eng.weight.push_back(RationalComplex::from_complex(a.weight));
        }
        // exp(i Lambda . z~) = exp(i y~ . Lambda) ... = 1 under the exact gate
        auto acc = eng.run([](const std::vector<RationalComplex>&) {
            return RationalComplex(1);
        });
        out.exact = true;
        out.exact_coefficients.assign(order + 1, RationalComplex(0));
        RationalComplex ipw(1);
        const RationalComplex step = [&] {
            switch ((quarter % 4 + 4) % 4) {  // i^{-quarter}
                case 0: return RationalComplex(Rational(1), Rational(0));
                case 1: return RationalComplex(Rational(0), Rational(-1));
                case 2: return RationalComplex(Rational(-1), Rational(0));
                default: return RationalComplex(Rational(0), Rational(1));
            }
        }();
        for (int r = 0; r <= order; ++r) {
            out.exact_coefficients[r] = ipw * acc[r];
            out.coefficients[r] = out.exact_coefficients[r].to_complex();
            ipw *= step;
        }
        return out;
    }

    RecursionEngine<Complex> eng;
    eng.nu = m.nu;
    eng.order = order;
    eng.z.assign(m.nu, Complex(0.0, 0.0));
    const CVec zvec = sub(f.x_rot, f.y_rot);
    for (int d = 0; d < m.nu; ++d) eng.z[d] = zvec[d];
    double lam_z_max = 0.0;
    {
        double xi_max = 0.0;
        for (const Atom& a : m.atoms) xi_max = std::max(xi_max, abs_norm(a.xi));
        lam_z_max = order * xi_max * abs_norm(zvec);
    }
    // evaluation degrees from the factorial tail |Lambda z|^d / d!
    int eval_deg = 0;
    {
        double term = 1.0;
        while (eval_deg < 120 && term * std::exp(lam_z_max) > 1e-14) {
            ++eval_deg;
            term *= lam_z_max / eval_deg;
        }
    }
    eng.eval_deg = eval_deg;
    for (const Atom& a : m.atoms) {
        std::vector<Complex> c(m.nu);
        for (int d = 0; d < m.nu; ++d) c[d] = a.xi[d];
        eng.xi.push_back(std::move(c));
        // constant phase from c(y + z): w e^{i y~ . xi}
        eng.weight.push_back(a.weight *
                             std::exp(Complex(0.0, 1.0) * dot(f.y_rot, a.xi)));
    }
    auto acc = eng.run([&](const std::vector<Complex>& lam) {
        Complex lam_dot_z(0.0, 0.0);
        for (int d = 0; d < m.nu; ++d) lam_dot_z += lam[d] * eng.z[d];
        return std::exp(Complex(0.0, 1.0) * lam_dot_z);
    });
    const double eps_proj = project_2pi(m.epsilon);
    for (int r = 0; r <= order; ++r)
        out.coefficients[r] =
            Complex(std::cos(-eps_proj * r), std::sin(-eps_proj * r)) * acc[r];
    return out;
}

}  // namespace detail

}  // namespace dk
