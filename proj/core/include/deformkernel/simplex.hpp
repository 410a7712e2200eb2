#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "deformkernel/rational.hpp"
#include "deformkernel/surface.hpp"

namespace dk {

/// Exact ordered-simplex moment
///   int_{0 < s_1 < ... < s_n < 1} prod_i s_i^{p_i} ds
///     = prod_{k=1}^{n} 1 / (p_1 + ... + p_k + k).
Rational simplex_monomial_integral(std::span<const long> powers);

/**
 * Inputs of one iterated-integral term: a fixed tuple (xi_1 .. xi_n) of
 * frequency vectors (slot j belongs to the j-th smallest simplex variable),
 * the scalar phases phi_j multiplying s_j in the exponent, and the t-order
 * cap.  The engine expands
 *
 *   prod_j exp(i s_j phi_j) * exp(-t Q(s)),
 *   Q(s) = sum_{j,l} s_{j and l} (1 - s_{j or l}) xi_j . xi_l,
 *
 * as a polynomial in s (phases truncated at phase_order[j] terms) and
 * integrates each monomial exactly over the ordered simplex, producing the
 * coefficients of t^0 .. t^order of  int_simplex (...) d^n s.
 *
 * The integration runs variable by variable, innermost first, carrying the
 * couplings through the running state Q^{(k)} = Q(s_k..s_n) and
 * V^{(k)} = sum_{l >= k} (1 - s_l) xi_l; each stage is an exact polynomial
 * substitution followed by a monomial integration step, so the result is
 * identical to expanding everything up front and applying the simplex
 * moment formula term by term.
 */
struct TupleSeriesInput {
    int n = 0;
    int nu = 1;
    std::vector<CVec> xi;           // xi[j], j = 0..n-1
    std::vector<Complex> phi;       // phi[j]; empty means all zero
    std::vector<int> phase_order;   // terms kept per phase factor (>= 1); empty means exact-zero phases
    int order = 0;                  // highest t power kept
};

/// Floating-point engine.
std::vector<Complex> tuple_simplex_series(const TupleSeriesInput& in);

/// Exact rational engine; requires all phases identically zero.
struct TupleSeriesExactInput {
    int n = 0;
    int nu = 1;
    std::vector<std::vector<RationalComplex>> xi;
    int order = 0;
};
std::vector<RationalComplex> tuple_simplex_series_exact(const TupleSeriesExactInput& in);

}  // namespace dk
