#include "fqhb/bounds.hpp"

#include "fqhb/projgeom.hpp"

#include <algorithm>
#include <stdexcept>

namespace fqhb {

std::string bigint_to_string(BigInt v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s += char('0' + int(v % 10));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

namespace {

BigInt ipow(std::uint64_t q, std::int64_t e) {
    BigInt acc = 1;
    for (std::int64_t i = 0; i < e; ++i) acc *= q;
    return acc;
}

// N_q(P^N) in 128 bits; N = -1 gives 0.
BigInt np(std::int64_t N, std::uint64_t q) { return proj_count128(N, q); }

bool is_prime_power_u64(std::uint64_t q) {
    if (q < 2) return false;
    if (q > (std::uint64_t(1) << 32))
        throw std::invalid_argument("bounds: q above 2^32 not supported");
    std::uint64_t p = q;
    for (std::uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) { p = d; break; }
    std::uint64_t m = q;
    while (m % p == 0) m /= p;
    return m == 1;
}

} // namespace

void validate_bound_spec(const BoundSpec& s) {
    if (s.d < 2) throw std::invalid_argument("bounds: d must be >= 2");
    if (s.n < 1) throw std::invalid_argument("bounds: n must be >= 1");
    if (s.k < 0 || s.k > s.n) throw std::invalid_argument("bounds: k must be in 0..n");
    if (!is_prime_power_u64(s.q)) throw std::invalid_argument("bounds: q must be a prime power");
}

BigInt theta(const BoundSpec& s) {
    validate_bound_spec(s);
    if (s.k > 0)
        return BigInt(s.d - 1) * ipow(s.q, s.k) * np(s.n - s.k, s.q) + np(s.k, s.q);
    return BigInt(s.d - 1) * ipow(s.q, s.n) + BigInt(s.d - 2) * np(s.n - 1, s.q) + 1;
}

BigInt serre_bound(std::int64_t d, std::int64_t n, std::uint64_t q) {
    if (d < 2 || n < 1) throw std::invalid_argument("bounds: need d >= 2, n >= 1");
    return BigInt(d) * ipow(q, n) + np(n - 1, q);
}

BigInt singular_k0_bound(std::int64_t d, std::int64_t n, std::uint64_t q) {
    if (d < 2 || n < 1) throw std::invalid_argument("bounds: need d >= 2, n >= 1");
    return BigInt(d - 2) * ipow(q, n) + BigInt(d - 2) * np(n - 1, q) + 1;
}

BigInt homma_k0_bound(std::int64_t d, std::int64_t n, std::uint64_t q) {
    if (d < 2 || n < 1) throw std::invalid_argument("bounds: need d >= 2, n >= 1");
    return BigInt(d - 1) * (ipow(q, n) + 1) + BigInt(d - 2) * (np(n - 2, q) - 1);
}

BigInt quadric_cone_count(std::int64_t n, std::int64_t h, QuadricKind kind,
                          std::uint64_t q) {
    if (h < -1 || h > n - 1)
        throw std::invalid_argument("bounds: vertex dimension must be in -1..n-1");
    if (!is_prime_power_u64(q)) throw std::invalid_argument("bounds: q must be a prime power");
    std::int64_t amb = n - h; // the base quadric spans a P^{n-h}
    BigInt base;
    if (kind == QuadricKind::parabolic) {
        if (amb % 2 != 0)
            throw std::invalid_argument("bounds: parabolic quadric needs n-h even");
        base = np(n - h - 1, q); // N(P^{2s-1}) for Q in P^{2s}
    } else {
        if (amb % 2 != 1)
            throw std::invalid_argument("bounds: hyperbolic/elliptic quadric needs n-h odd");
        std::int64_t s = (n - h - 1) / 2; // Q in P^{2s+1}
        if (kind == QuadricKind::hyperbolic) {
            base = (ipow(q, s) + 1) * np(s, q);
        } else {
            // (q^s - 1)(q^{s+1} + 1) / (q - 1), exactly divisible
            BigInt num = (ipow(q, s) - 1) * (ipow(q, s + 1) + 1);
            base = num / (q - 1);
        }
    }
    return ipow(q, h + 1) * base + np(h, q);
}

} // namespace fqhb
