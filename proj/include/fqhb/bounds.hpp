#pragma once
// Closed-form point-count bounds for degree-d hypersurfaces X ⊂ P^{n+1}(F_q)
// in terms of the maximal dimension k of a linear flat contained in X, plus
// the exact counts of quadric cones.  All arithmetic is 128-bit.

#include <cstdint>
#include <string>

namespace fqhb {

using BigInt = unsigned __int128;

std::string bigint_to_string(BigInt v);

struct BoundSpec {
    std::int64_t n; // hypersurface dimension, >= 1
    std::int64_t k; // flat-dimension invariant, 0 <= k <= n
    std::int64_t d; // degree, >= 2
    std::uint64_t q; // prime power
};

// Throws std::invalid_argument if the arguments violate d >= 2, n >= 1,
// 0 <= k <= n, or q not a prime power (q <= 2^32 supported).
void validate_bound_spec(const BoundSpec& s);

// (d-1) q^k N(P^{n-k}) + N(P^k) for k > 0;
// (d-1) q^n + (d-2) N(P^{n-1}) + 1 for k = 0.
BigInt theta(const BoundSpec& s);

// d q^n + N(P^{n-1}); coincides with theta at k = n.
BigInt serre_bound(std::int64_t d, std::int64_t n, std::uint64_t q);

// (d-2) q^n + (d-2) N(P^{n-1}) + 1: the sharper ceiling when k = 0 and X
// has a rational singular point.
BigInt singular_k0_bound(std::int64_t d, std::int64_t n, std::uint64_t q);

// (d-1)(q^n + 1) + (d-2)(N(P^{n-2}) - 1): the comparison bound that forces
// d = 2 when k = 0 and the count reaches theta.
BigInt homma_k0_bound(std::int64_t d, std::int64_t n, std::uint64_t q);

enum class QuadricKind { parabolic, hyperbolic, elliptic };

// Exact number of rational points of a cone P^h * Q with vertex a flat of
// dimension h (h = -1: no vertex) over a nondegenerate quadric Q of
// dimension n-h-1.  Parity: parabolic needs n-h even, hyperbolic and
// elliptic need n-h odd; violations throw.
BigInt quadric_cone_count(std::int64_t n, std::int64_t h, QuadricKind kind,
                          std::uint64_t q);

} // namespace fqhb
