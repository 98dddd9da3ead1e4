#pragma once
// Arithmetic in GF(p^r) for prime powers q = p^r up to 2^16.
//
// Elements are stored as integers in [0, q).  The base-p digits of the value
// are the coefficients of the element written in the power basis 1, a, a^2,
// ..., a^{r-1}, where a is a root of the modulus; the constant coefficient is
// the least significant digit.  For prime fields (r = 1) the value is simply
// the residue mod p.
//
// Multiplication, inversion and powering go through exp/log tables built from
// a fixed multiplicative generator, so all per-element operations are O(1)
// after construction (O(r) for addition in extension fields).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fqhb {

using Fe = std::uint16_t; // element value in [0, q)

// Lexicographically smallest monic irreducible polynomial of degree r over
// F_p, for every (p, r) with r >= 2 and p^r <= 2^16.  Coefficients are listed
// constant term first and include the leading 1.
struct ModulusEntry {
    std::uint32_t p;
    std::uint32_t r;
    std::vector<std::uint16_t> coeffs; // length r + 1
};
const std::vector<ModulusEntry>& default_moduli();

class FieldCtx {
  public:
    // Builds GF(p^r) with the default modulus for (p, r), or with a caller
    // supplied monic modulus (constant term first, length r + 1).  Throws
    // std::invalid_argument if p is not prime, r < 1, p^r > 2^16, or the
    // given modulus is not monic of degree r or not irreducible.
    FieldCtx(std::uint32_t p, std::uint32_t r,
             const std::vector<std::uint16_t>& modulus = {});

    std::uint32_t p() const { return p_; }
    std::uint32_t r() const { return r_; }
    std::uint32_t q() const { return q_; }
    // Modulus coefficients, constant first, length r + 1; for r = 1 this is
    // {0, 1}, i.e. the polynomial x.
    const std::vector<std::uint16_t>& modulus() const { return mod_; }
    Fe generator() const { return gen_; }

    Fe add(Fe a, Fe b) const;
    Fe sub(Fe a, Fe b) const;
    Fe neg(Fe a) const;
    Fe mul(Fe a, Fe b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    // Throws std::invalid_argument on a == 0.
    Fe inv(Fe a) const;
    Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
    // a^e with a^0 = 1 (including 0^0 = 1).
    Fe pow(Fe a, std::uint64_t e) const;

    // Digit i of a, i.e. the coefficient of a^i in the power basis.
    std::uint32_t digit(Fe a, std::uint32_t i) const;
    Fe from_digits(const std::vector<std::uint32_t>& ds) const;

    // x -> x^{p^{r/2}} = x^{sqrt(q)}; requires r even (throws otherwise).
    // This is an involutory automorphism fixing exactly GF(sqrt(q)).
    Fe frobenius_sqrt(Fe a) const;
    std::uint32_t sqrt_q() const; // p^{r/2}, requires r even

    // Absolute trace x + x^p + ... + x^{p^{r-1}}, as a value in [0, p).
    std::uint32_t abs_trace(Fe a) const;

    // Whether a is a square in the field.  0 counts as a square; in
    // characteristic 2 every element is a square.
    bool is_square(Fe a) const {
        if (a == 0 || p_ == 2) return true;
        return log_[a] % 2 == 0;
    }

    // Prime fields: the residue as a decimal integer.  Extension fields:
    // "0", "1", or "g^k" where g is the fixed generator.
    std::string to_string(Fe a) const;
    // Modulus as a comma separated coefficient list, constant term first.
    std::string modulus_csv() const;

  private:
    std::uint32_t p_, r_, q_;
    std::vector<std::uint16_t> mod_;
    Fe gen_ = 0;
    std::vector<Fe> exp_; // length 2(q-1): exp_[i] = g^i, doubled to skip a mod
    std::vector<std::uint32_t> log_; // log_[x] in [0, q-1) for x != 0

    Fe poly_mul(Fe a, Fe b) const; // table-free, used during construction
    Fe poly_pow(Fe a, std::uint64_t e) const;
};

FieldCtx field_create(std::uint32_t p, std::uint32_t r,
                      const std::vector<std::uint16_t>& modulus = {});

// Parses a field spec: either "p^r" (e.g. "2^4") or a plain prime power
// (e.g. "16", "7").  Throws std::invalid_argument on malformed input or when
// the value is not a prime power in range.
FieldCtx field_from_spec(const std::string& spec);

bool is_prime_u32(std::uint32_t n);

} // namespace fqhb
