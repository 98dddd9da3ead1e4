#pragma once
// Sparse homogeneous forms over F_q: parsing/printing, evaluation, point
// counting, restriction to flats, and formal partial derivatives.
//
// Terms live in a map keyed by a packed exponent vector: one byte per
// variable, X0 in the most significant byte, so integer order on keys is
// lexicographic order on exponent vectors.  At most 8 variables (ambient
// P^7), exponents up to 255.

#include "fqhb/gf.hpp"
#include "fqhb/projgeom.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fqhb {

constexpr std::uint32_t kMaxVars = 8;

std::uint64_t pack_exponents(const std::vector<std::uint32_t>& e);
std::vector<std::uint32_t> unpack_exponents(std::uint64_t key, std::uint32_t nvars);

struct HomogPoly {
    std::uint32_t nvars = 0;
    std::uint32_t degree = 0;
    std::map<std::uint64_t, Fe> terms; // packed exponents -> nonzero coefficient

    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const HomogPoly&, const HomogPoly&) = default;
};

// Grammar: sum of terms joined by '+'; a term is a '*'-joined product of
// factors, each either a coefficient (decimal, reduced mod p, or 'g^k' /
// 'g' in terms of the field generator) or 'X<i>' / 'X<i>^<e>'.  Whitespace
// is ignored.  Like terms combine; a form that collapses to zero, mixes
// degrees, or names a variable out of range is rejected.
HomogPoly parse_form(const FieldCtx& F, const std::string& text, std::uint32_t nvars);

// Canonical printing: terms in lexicographic exponent order (X0-major
// first), coefficients as in the grammar; the zero polynomial prints "0".
std::string print_form(const FieldCtx& F, const HomogPoly& f);

// Value at the normalized representative of p.
Fe evaluate(const FieldCtx& F, const HomogPoly& f, const ProjPoint& p);
// Value at an arbitrary (not necessarily normalized) coordinate vector.
Fe evaluate_raw(const FieldCtx& F, const HomogPoly& f, const std::vector<Fe>& v);

// N_q(X): zeros of f among the points of P^{nvars-1}(F_q).  Rejects the
// zero polynomial.
std::uint64_t count_points(const FieldCtx& F, const HomogPoly& f);

// General linear substitution X_j = sum_u rows[u*f.nvars + j] * U_u: the
// result is a form of the same degree in nrows variables (possibly zero).
HomogPoly substitute_linear(const FieldCtx& F, const HomogPoly& f,
                            const std::vector<Fe>& rows, std::uint32_t nrows);

// Substitutes the flat's row parametrization into f; the result is a form
// of the same degree in dim L + 1 variables and may be zero.  Requires
// dim L >= 0 and L.ncols == f.nvars.
HomogPoly restrict_to_flat(const FieldCtx& F, const HomogPoly& f, const Flat& L);

// Formal partial derivatives dF/dX_i, i = 0..nvars-1; exponent multipliers
// are reduced mod p, so entries may be the zero polynomial.
std::vector<HomogPoly> partials(const FieldCtx& F, const HomogPoly& f);

// The monomial basis of degree d in nvars variables as packed keys in
// canonical (descending key = X0-major lexicographic) order.
const std::vector<std::uint64_t>& monomial_basis(std::uint32_t nvars, std::uint32_t degree);

// Dense coefficient vector over monomial_basis(nvars, degree).
HomogPoly from_coeffs(std::uint32_t nvars, std::uint32_t degree, const std::vector<Fe>& c);
std::vector<Fe> to_coeffs(const HomogPoly& f);

// Census form identifier: one base-q digit per basis monomial (0-9a-z when
// q <= 36, else dot-separated decimal values).
std::string coeff_id(const FieldCtx& F, const HomogPoly& f);
HomogPoly from_coeff_id(const FieldCtx& F, std::uint32_t nvars, std::uint32_t degree,
                        const std::string& id);

} // namespace fqhb
