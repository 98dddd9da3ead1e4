#include "fqhb/gf.hpp"

#include <algorithm>
#include <numeric>

namespace fqhb {

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

const std::vector<ModulusEntry>& default_moduli() {
    static const std::vector<ModulusEntry> table = {
        // clang-format off
    {2, 2, {1, 1, 1}},
    {2, 3, {1, 1, 0, 1}},
    {2, 4, {1, 1, 0, 0, 1}},
    {2, 5, {1, 0, 1, 0, 0, 1}},
    {2, 6, {1, 1, 0, 0, 0, 0, 1}},
    {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
    {2, 8, {1, 1, 0, 1, 1, 0, 0, 0, 1}},
    {2, 9, {1, 1, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 10, {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1}},
    {2, 11, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 12, {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 13, {1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 14, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 15, {1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 16, {1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {3, 2, {1, 0, 1}},
    {3, 3, {1, 2, 0, 1}},
    {3, 4, {2, 1, 0, 0, 1}},
    {3, 5, {1, 2, 0, 0, 0, 1}},
    {3, 6, {2, 1, 0, 0, 0, 0, 1}},
    {3, 7, {2, 0, 1, 0, 0, 0, 0, 1}},
    {3, 8, {2, 0, 1, 0, 0, 0, 0, 0, 1}},
    {3, 9, {1, 0, 1, 2, 0, 0, 0, 0, 0, 1}},
    {3, 10, {1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 1}},
    {5, 2, {2, 0, 1}},
    {5, 3, {1, 1, 0, 1}},
    {5, 4, {2, 0, 0, 0, 1}},
    {5, 5, {1, 4, 0, 0, 0, 1}},
    {5, 6, {2, 1, 0, 0, 0, 0, 1}},
    {7, 2, {1, 0, 1}},
    {7, 3, {2, 0, 0, 1}},
    {7, 4, {1, 1, 0, 0, 1}},
    {7, 5, {3, 1, 0, 0, 0, 1}},
    {11, 2, {1, 0, 1}},
    {11, 3, {4, 1, 0, 1}},
    {11, 4, {2, 1, 0, 0, 1}},
    {13, 2, {2, 0, 1}},
    {13, 3, {2, 0, 0, 1}},
    {13, 4, {2, 0, 0, 0, 1}},
    {17, 2, {3, 0, 1}},
    {17, 3, {3, 1, 0, 1}},
    {19, 2, {1, 0, 1}},
    {19, 3, {2, 0, 0, 1}},
    {23, 2, {1, 0, 1}},
    {23, 3, {3, 1, 0, 1}},
    {29, 2, {2, 0, 1}},
    {29, 3, {4, 1, 0, 1}},
    {31, 2, {1, 0, 1}},
    {31, 3, {3, 0, 0, 1}},
    {37, 2, {2, 0, 1}},
    {37, 3, {2, 0, 0, 1}},
    {41, 2, {3, 0, 1}},
    {43, 2, {1, 0, 1}},
    {47, 2, {1, 0, 1}},
    {53, 2, {2, 0, 1}},
    {59, 2, {1, 0, 1}},
    {61, 2, {2, 0, 1}},
    {67, 2, {1, 0, 1}},
    {71, 2, {1, 0, 1}},
    {73, 2, {5, 0, 1}},
    {79, 2, {1, 0, 1}},
    {83, 2, {1, 0, 1}},
    {89, 2, {3, 0, 1}},
    {97, 2, {5, 0, 1}},
    {101, 2, {2, 0, 1}},
    {103, 2, {1, 0, 1}},
    {107, 2, {1, 0, 1}},
    {109, 2, {2, 0, 1}},
    {113, 2, {3, 0, 1}},
    {127, 2, {1, 0, 1}},
    {131, 2, {1, 0, 1}},
    {137, 2, {3, 0, 1}},
    {139, 2, {1, 0, 1}},
    {149, 2, {2, 0, 1}},
    {151, 2, {1, 0, 1}},
    {157, 2, {2, 0, 1}},
    {163, 2, {1, 0, 1}},
    {167, 2, {1, 0, 1}},
    {173, 2, {2, 0, 1}},
    {179, 2, {1, 0, 1}},
    {181, 2, {2, 0, 1}},
    {191, 2, {1, 0, 1}},
    {193, 2, {5, 0, 1}},
    {197, 2, {2, 0, 1}},
    {199, 2, {1, 0, 1}},
    {211, 2, {1, 0, 1}},
    {223, 2, {1, 0, 1}},
    {227, 2, {1, 0, 1}},
    {229, 2, {2, 0, 1}},
    {233, 2, {3, 0, 1}},
    {239, 2, {1, 0, 1}},
    {241, 2, {7, 0, 1}},
    {251, 2, {1, 0, 1}},
        // clang-format on
    };
    return table;
}

namespace {

// Dense polynomials over F_p, coefficients constant-term first.
using Poly = std::vector<std::uint32_t>;

Poly poly_trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

// Remainder of a mod b, b monic and nonzero.
Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
    a = poly_trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
        std::uint32_t c = a.back();
        std::size_t shift = a.size() - 1 - db;
        if (c != 0)
            for (std::size_t i = 0; i <= db; ++i)
                a[shift + i] = (a[shift + i] + p * c - c * b[i] % p) % p;
        a.pop_back();
        a = poly_trim(a);
    }
    return a;
}

bool poly_is_zero(const Poly& a) { return poly_trim(a).empty(); }

// Irreducibility over F_p by trial division against every monic polynomial
// of degree 1 .. deg(m)/2.  Divisor candidates are enumerated by the base-p
// digits of an index.
bool modulus_irreducible(const std::vector<std::uint16_t>& m, std::uint32_t p) {
    Poly mp(m.begin(), m.end());
    std::size_t r = m.size() - 1;
    for (std::size_t d = 1; 2 * d <= r; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Poly div(d + 1, 0);
            std::uint64_t t = idx;
            for (std::size_t i = 0; i < d; ++i) { div[i] = t % p; t /= p; }
            div[d] = 1;
            if (poly_is_zero(poly_rem(mp, div, p))) return false;
        }
    }
    return true;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
    std::vector<std::uint32_t> fs;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) fs.push_back(n);
    return fs;
}

} // namespace

FieldCtx::FieldCtx(std::uint32_t p, std::uint32_t r,
                   const std::vector<std::uint16_t>& modulus)
    : p_(p), r_(r) {
    if (!is_prime_u32(p)) throw std::invalid_argument("field: p is not prime");
    if (r < 1) throw std::invalid_argument("field: r must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
        q *= p;
        if (q > 65536) throw std::invalid_argument("field: p^r exceeds 2^16");
    }
    q_ = static_cast<std::uint32_t>(q);

    if (!modulus.empty()) {
        if (modulus.size() != r + 1 || modulus.back() != 1)
            throw std::invalid_argument("field: modulus must be monic of degree r");
        for (auto c : modulus)
            if (c >= p) throw std::invalid_argument("field: modulus coefficient out of range");
        if (r > 1 && !modulus_irreducible(modulus, p))
            throw std::invalid_argument("field: modulus is reducible");
        mod_ = modulus;
    } else if (r == 1) {
        mod_ = {0, 1};
    } else {
        for (const auto& e : default_moduli())
            if (e.p == p && e.r == r) { mod_ = e.coeffs; break; }
        if (mod_.empty()) throw std::invalid_argument("field: no default modulus");
        if (!modulus_irreducible(mod_, p))
            throw std::logic_error("field: default modulus is reducible");
    }

    // Multiplicative generator: smallest element value whose order is q - 1.
    auto factors = prime_factors(q_ - 1);
    for (Fe cand = 1; cand < q_; ++cand) {
        bool ok = true;
        for (auto f : factors)
            if (poly_pow(cand, (q_ - 1) / f) == 1) { ok = false; break; }
        if (ok) { gen_ = cand; break; }
    }

    exp_.assign(2 * (q_ - 1), 0);
    log_.assign(q_, 0);
    Fe cur = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
        exp_[i] = cur;
        exp_[i + (q_ - 1)] = cur;
        log_[cur] = i;
        cur = poly_mul(cur, gen_);
    }
    if (cur != 1) throw std::logic_error("field: generator order mismatch");
}

Fe FieldCtx::poly_mul(Fe a, Fe b) const {
    if (r_ == 1) return static_cast<Fe>(std::uint32_t(a) * b % p_);
    // Convolve base-p digit vectors, then reduce by the monic modulus.
    std::vector<std::uint32_t> da(r_), db(r_), prod(2 * r_ - 1, 0);
    std::uint32_t ta = a, tb = b;
    for (std::uint32_t i = 0; i < r_; ++i) { da[i] = ta % p_; ta /= p_; }
    for (std::uint32_t i = 0; i < r_; ++i) { db[i] = tb % p_; tb /= p_; }
    for (std::uint32_t i = 0; i < r_; ++i)
        if (da[i])
            for (std::uint32_t j = 0; j < r_; ++j)
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    for (std::uint32_t i = 2 * r_ - 2; i >= r_; --i) {
        std::uint32_t c = prod[i];
        if (c)
            for (std::uint32_t j = 0; j <= r_; ++j) {
                auto& t = prod[i - r_ + j];
                t = (t + p_ * c - c * mod_[j] % p_) % p_;
            }
        if (i == r_) break;
    }
    std::uint32_t v = 0;
    for (std::uint32_t i = r_; i-- > 0;) v = v * p_ + prod[i];
    return static_cast<Fe>(v);
}

Fe FieldCtx::poly_pow(Fe a, std::uint64_t e) const {
    Fe acc = 1, base = a;
    while (e) {
        if (e & 1) acc = poly_mul(acc, base);
        base = poly_mul(base, base);
        e >>= 1;
    }
    return acc;
}

Fe FieldCtx::add(Fe a, Fe b) const {
    if (p_ == 2) return a ^ b;
    if (r_ == 1) return static_cast<Fe>((std::uint32_t(a) + b) % p_);
    std::uint32_t v = 0, pw = 1;
    for (std::uint32_t i = 0; i < r_; ++i) {
        std::uint32_t da = (a / pw) % p_, db = (b / pw) % p_;
        v += (da + db) % p_ * pw;
        pw *= p_;
    }
    return static_cast<Fe>(v);
}

Fe FieldCtx::neg(Fe a) const {
    if (p_ == 2) return a;
    if (r_ == 1) return static_cast<Fe>((p_ - a) % p_);
    std::uint32_t v = 0, pw = 1;
    for (std::uint32_t i = 0; i < r_; ++i) {
        std::uint32_t d = (a / pw) % p_;
        v += (p_ - d) % p_ * pw;
        pw *= p_;
    }
    return static_cast<Fe>(v);
}

Fe FieldCtx::sub(Fe a, Fe b) const { return add(a, neg(b)); }

Fe FieldCtx::inv(Fe a) const {
    if (a == 0) throw std::invalid_argument("field: inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Fe FieldCtx::pow(Fe a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    std::uint64_t le = log_[a] % (q_ - 1) * (e % (q_ - 1)) % (q_ - 1);
    return exp_[le];
}

std::uint32_t FieldCtx::digit(Fe a, std::uint32_t i) const {
    std::uint32_t pw = 1;
    for (std::uint32_t k = 0; k < i; ++k) pw *= p_;
    return (a / pw) % p_;
}

Fe FieldCtx::from_digits(const std::vector<std::uint32_t>& ds) const {
    if (ds.size() != r_) throw std::invalid_argument("field: digit count != r");
    std::uint32_t v = 0;
    for (std::uint32_t i = r_; i-- > 0;) {
        if (ds[i] >= p_) throw std::invalid_argument("field: digit out of range");
        v = v * p_ + ds[i];
    }
    return static_cast<Fe>(v);
}

std::uint32_t FieldCtx::sqrt_q() const {
    if (r_ % 2 != 0) throw std::invalid_argument("field: sqrt(q) needs even r");
    std::uint32_t s = 1;
    for (std::uint32_t i = 0; i < r_ / 2; ++i) s *= p_;
    return s;
}

Fe FieldCtx::frobenius_sqrt(Fe a) const { return pow(a, sqrt_q()); }

std::uint32_t FieldCtx::abs_trace(Fe a) const {
    Fe t = 0, x = a;
    for (std::uint32_t i = 0; i < r_; ++i) {
        t = add(t, x);
        x = pow(x, p_);
    }
    for (std::uint32_t i = 1; i < r_; ++i)
        if (digit(t, i) != 0) throw std::logic_error("field: trace not in F_p");
    return digit(t, 0);
}

std::string FieldCtx::to_string(Fe a) const {
    if (r_ == 1) return std::to_string(a);
    if (a == 0) return "0";
    if (a == 1) return "1";
    return "g^" + std::to_string(log_[a]);
}

std::string FieldCtx::modulus_csv() const {
    std::string s;
    for (std::size_t i = 0; i < mod_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(mod_[i]);
    }
    return s;
}

FieldCtx field_create(std::uint32_t p, std::uint32_t r,
                      const std::vector<std::uint16_t>& modulus) {
    return FieldCtx(p, r, modulus);
}

FieldCtx field_from_spec(const std::string& spec) {
    auto parse_u32 = [](const std::string& s) -> std::uint32_t {
        if (s.empty() || s.size() > 9 ||
            !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw std::invalid_argument("field: bad spec '" + s + "'");
        return static_cast<std::uint32_t>(std::stoul(s));
    };
    auto caret = spec.find('^');
    if (caret != std::string::npos) {
        std::uint32_t p = parse_u32(spec.substr(0, caret));
        std::uint32_t r = parse_u32(spec.substr(caret + 1));
        return field_create(p, r);
    }
    std::uint32_t n = parse_u32(spec);
    if (n < 2) throw std::invalid_argument("field: order must be >= 2");
    std::uint32_t p = n;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) { p = d; break; }
    std::uint32_t r = 0, m = n;
    while (m % p == 0) { m /= p; ++r; }
    if (m != 1) throw std::invalid_argument("field: order is not a prime power");
    return field_create(p, r);
}

} // namespace fqhb
