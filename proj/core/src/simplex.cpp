#include "deformkernel/simplex.hpp"

#include <array>
#include <cmath>
#include <unordered_map>

#include "deformkernel/errors.hpp"

namespace dk {

Rational simplex_monomial_integral(std::span<const long> powers) {
    Rational out(1);
    long prefix = 0;
    long k = 0;
    for (long p : powers) {
        if (p < 0) throw std::invalid_argument("simplex moment: negative power");
        prefix += p;
        ++k;
        out /= Rational(prefix + k);
    }
    return out;
}

namespace {

constexpr int kMaxNu = 4;
constexpr int kMaxOrder = 63;
constexpr int kMaxSPow = 4094;

// Cell key: t:6 | q:6 | v0..v3:6 each.  A cell holds the dense coefficient
// vector of the current stage variable's powers.
using Key = std::uint32_t;

inline Key pack(int t, int q, const std::array<int, kMaxNu>& v) {
    Key k = (Key(t) << 26) | (Key(q) << 20);
    for (int d = 0; d < kMaxNu; ++d) k |= Key(v[d]) << (5 * d);
    return k;
}
inline void unpack(Key k, int& t, int& q, std::array<int, kMaxNu>& v) {
    t = int((k >> 26) & 0x3f);
    q = int((k >> 20) & 0x3f);
    for (int d = 0; d < kMaxNu; ++d) v[d] = int((k >> (5 * d)) & 0x1f);
}

template <typename S>
struct Traits;

template <>
struct Traits<Complex> {
    using CoefT = double;
    static Complex from_coef(double c) { return Complex(c, 0.0); }
    static bool negligible(const Complex& c) { return std::abs(c) < 1e-300; }
    static void div_index(Complex& c, long d) { c /= double(d); }
};

template <>
struct Traits<RationalComplex> {
    using CoefT = Rational;
    static RationalComplex from_coef(const Rational& c) { return RationalComplex(c); }
    static bool negligible(const RationalComplex& c) { return c.is_zero(); }
    static void div_index(RationalComplex& c, long d) {
        c.re /= d;
        c.im /= d;
    }
};

template <typename CT>
CT binom(int n, int k) {
    if (k < 0 || k > n) return CT(0);
    CT r(1);
    for (int i = 1; i <= k; ++i) {
        r *= CT(n - k + i);
        r /= CT(i);
    }
    return r;
}

template <typename S>
struct StageAtom {
    S qq{};
    std::array<S, kMaxNu> xi{};
    std::array<bool, kMaxNu> xi_zero{};
    std::vector<S> phase;  // (i phi)^h / h!, h = 0..H (size 1 when no phase)
};

template <typename S>
using State = std::unordered_map<Key, std::vector<S>>;

/**
 * One stage of the iterated integration.  Substitutes
 *   Q^{(k)} = Q' + s (1-s) qq + 2 s (xi . V'),
 *   V^{(k)} = V' + (1-s) xi,
 * multiplies the truncated phase series in s, expands the collected (1-s)
 * powers, and integrates the stage variable (s^p -> s'^{p+1}/(p+1); the
 * divisor equals the target index, so division is deferred to one sweep
 * after all contributions have accumulated).
 */
template <typename S>
void run_stage(const StageAtom<S>& at, int nu, bool last, State<S>& cur,
               State<S>& next) {
    using T = Traits<S>;
    using CT = typename T::CoefT;

    // cached convolution kernels: (1-s)^e binomials convolved with the phase
    std::vector<std::vector<S>> kernel_by_e;
    auto kernel = [&](int e) -> const std::vector<S>& {
        if (e < static_cast<int>(kernel_by_e.size()) && !kernel_by_e[e].empty())
            return kernel_by_e[e];
        if (e >= static_cast<int>(kernel_by_e.size())) kernel_by_e.resize(e + 1);
        const std::size_t H = at.phase.size() - 1;
        std::vector<S> w(std::size_t(e) + H + 1, S(0));
        for (int i = 0; i <= e; ++i) {
            CT bc = binom<CT>(e, i);
            if ((i & 1) != 0) bc *= CT(-1);
            const S bcs = T::from_coef(bc);
            for (std::size_t h = 0; h <= H; ++h) w[i + h] += bcs * at.phase[h];
        }
        kernel_by_e[e] = std::move(w);
        return kernel_by_e[e];
    };

    // powers of the per-stage couplings
    std::vector<S> qq_pow{S(1)};
    std::array<std::vector<S>, kMaxNu> xi_pow;
    for (int d = 0; d < nu; ++d) xi_pow[d] = {S(1)};
    auto power = [](std::vector<S>& cache, const S& base, int p) -> const S& {
        while (static_cast<int>(cache.size()) <= p) cache.push_back(cache.back() * base);
        return cache[p];
    };

    std::array<int, kMaxNu> v{}, j{}, gamma{}, vout{};

    auto add_into = [&](Key key, int shift, const std::vector<S>& poly, const S& coef,
                        const std::vector<S>& w) {
        auto& target = next[key];
        const std::size_t need = poly.size() + shift + w.size() + 1;
        if (need > kMaxSPow) throw TruncationError("simplex engine: s-power overflow");
        if (target.size() < need) target.resize(need, S(0));
        for (std::size_t p = 0; p < poly.size(); ++p) {
            if (T::negligible(poly[p])) continue;
            const S pc = poly[p] * coef;
            S* out = target.data() + p + shift + 1;
            for (std::size_t k = 0; k < w.size(); ++k) out[k] += pc * w[k];
        }
    };

    next.clear();
    for (auto& [key, poly] : cur) {
        int tp, q;
        unpack(key, tp, q, v);
        for (int a = last ? 0 : q; a >= 0; --a) {
            const CT bin_qa = binom<CT>(q, a);
            for (int b = q - a; b >= 0; --b) {
                const int c = q - a - b;
                if (last && c > 0) continue;  // V' = 0
                CT mult = bin_qa * binom<CT>(q - a, b);
                S base = T::from_coef(mult) * power(qq_pow, at.qq, b);
                for (int i = 0; i < c; ++i) base = base * S(2);
                if (T::negligible(base)) continue;

                // gamma: composition of c over nu components ((xi.V')^c)
                gamma.fill(0);
                gamma[0] = c;
                for (;;) {
                    // only compositions supported on nonzero xi components
                    bool dead = false;
                    CT gcoef(1);
                    S gval = base;
                    int left = c;
                    for (int d = 0; d < nu; ++d) {
                        if (gamma[d] == 0) continue;
                        if (at.xi_zero[d]) {
                            dead = true;
                            break;
                        }
                        gcoef *= binom<CT>(left, gamma[d]);
                        left -= gamma[d];
                        gval = gval * power(xi_pow[d], at.xi[d], gamma[d]);
                    }
                    if (!dead) {
                        gval = gval * T::from_coef(gcoef);
                        // V-binomials: j <= v component-wise (j = 0 on the last stage)
                        for (int d = 0; d < nu; ++d) j[d] = last ? 0 : v[d];
                        for (;;) {
                            S coef = gval;
                            CT cb(1);
                            int drop_total = 0;
                            bool vdead = false;
                            for (int d = 0; d < nu; ++d) {
                                const int drop = v[d] - j[d];
                                if (drop > 0) {
                                    if (at.xi_zero[d]) {
                                        vdead = true;
                                        break;
                                    }
                                    cb *= binom<CT>(v[d], j[d]);
                                    coef = coef * power(xi_pow[d], at.xi[d], drop);
                                    drop_total += drop;
                                }
                            }
                            if (!vdead) {
                                coef = coef * T::from_coef(cb);
                                for (int d = 0; d < nu; ++d) vout[d] = j[d] + gamma[d];
                                add_into(pack(tp, a, vout), b + c, poly, coef,
                                         kernel(b + drop_total));
                            }
                            if (last) break;
                            int d = 0;
                            while (d < nu) {
                                if (j[d] > 0) {
                                    --j[d];
                                    break;
                                }
                                j[d] = v[d];
                                ++d;
                            }
                            if (d == nu) break;
                        }
                    }
                    // next composition of c into nu parts
                    if (c == 0 || nu == 1) break;
                    int dd = 0;
                    while (dd < nu - 1 && gamma[dd] == 0) ++dd;
                    if (dd >= nu - 1) break;
                    const int head = gamma[dd];
                    gamma[dd] = 0;
                    gamma[0] = head - 1;
                    gamma[dd + 1] += 1;
                }
            }
        }
    }

    // deferred integration divisors: index p holds int s^{p-1} -> /p
    for (auto& [key, poly] : next) {
        for (std::size_t p = 1; p < poly.size(); ++p)
            if (!T::negligible(poly[p])) T::div_index(poly[p], long(p));
    }
}

template <typename S>
std::vector<S> run_engine(int n, int nu, const std::vector<StageAtom<S>>& atoms,
                          int order) {
    using T = Traits<S>;
    using CT = typename T::CoefT;
    if (nu < 1 || nu > kMaxNu)
        throw DomainError("exact simplex engine supports 1 <= nu <= 4");
    if (order > kMaxOrder) throw TruncationError("simplex engine: order cap exceeded");

    State<S> cur, next;
    {
        CT c(1);
        std::array<int, kMaxNu> v{};
        for (int m = 0; m <= order; ++m) {
            if (m > 0) {
                c *= CT(-1);
                c /= CT(m);
            }
            cur.emplace(pack(m, m, v), std::vector<S>{T::from_coef(c)});
        }
    }
    for (int stage = 0; stage < n; ++stage) {
        run_stage<S>(atoms[stage], nu, stage == n - 1, cur, next);
        cur.swap(next);
    }

    std::vector<S> out(order + 1, S(0));
    std::array<int, kMaxNu> v{};
    for (const auto& [key, poly] : cur) {
        int tp, q;
        unpack(key, tp, q, v);
        S sum(0);
        for (const S& c : poly) sum += c;  // evaluate at s = 1
        out[tp] += sum;
    }
    return out;
}

}  // namespace

std::vector<Complex> tuple_simplex_series(const TupleSeriesInput& in) {
    if (in.n == 0) {
        std::vector<Complex> out(in.order + 1, Complex(0.0, 0.0));
        out[0] = Complex(1.0, 0.0);
        return out;
    }
    std::vector<StageAtom<Complex>> atoms(in.n);
    for (int j = 0; j < in.n; ++j) {
        StageAtom<Complex>& a = atoms[j];
        Complex qq(0.0, 0.0);
        for (int d = 0; d < in.nu; ++d) {
            a.xi[d] = in.xi[j][d];
            a.xi_zero[d] = std::abs(a.xi[d]) == 0.0;
            qq += a.xi[d] * a.xi[d];
        }
        a.qq = qq;
        const Complex iphi =
            in.phi.empty() ? Complex(0.0, 0.0) : Complex(0.0, 1.0) * in.phi[j];
        const int H = in.phase_order.empty() ? 0 : in.phase_order[j];
        a.phase.assign(std::size_t(H) + 1, Complex(1.0, 0.0));
        for (int h = 1; h <= H; ++h) a.phase[h] = a.phase[h - 1] * iphi / double(h);
    }
    return run_engine<Complex>(in.n, in.nu, atoms, in.order);
}

std::vector<RationalComplex> tuple_simplex_series_exact(const TupleSeriesExactInput& in) {
    if (in.n == 0) {
        std::vector<RationalComplex> out(in.order + 1, RationalComplex(0));
        out[0] = RationalComplex(1);
        return out;
    }
    std::vector<StageAtom<RationalComplex>> atoms(in.n);
    for (int j = 0; j < in.n; ++j) {
        StageAtom<RationalComplex>& a = atoms[j];
        RationalComplex qq(0);
        for (int d = 0; d < in.nu; ++d) {
            a.xi[d] = in.xi[j][d];
            a.xi_zero[d] = a.xi[d].is_zero();
            qq += a.xi[d] * a.xi[d];
        }
        a.qq = qq;
        a.phase.assign(1, RationalComplex(1));
    }
    return run_engine<RationalComplex>(in.n, in.nu, atoms, in.order);
}

}  // namespace dk
