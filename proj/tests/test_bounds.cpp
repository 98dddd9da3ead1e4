#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fqhb/bounds.hpp"
#include "fqhb/forms.hpp"
#include "fqhb/projgeom.hpp"

using namespace fqhb;

namespace {

std::uint64_t small(BigInt v) {
    REQUIRE(v <= BigInt(UINT64_MAX));
    return static_cast<std::uint64_t>(v);
}

const std::uint64_t kPrimePowers9[] = {2, 3, 4, 5, 7, 8, 9};

} // namespace

TEST_CASE("theta values") {
    for (std::uint64_t q : kPrimePowers9)
        CHECK(small(theta({2, 0, 2, q})) == q * q + 1);
    CHECK(small(theta({2, 1, 3, 4})) == 45); // 2*4*5 + 5
    CHECK(small(theta({2, 1, 3, 2})) == 15); // d = q+1: fills P^3(F_2)
    CHECK(small(theta({2, 1, 3, 2})) == proj_count(3, 2));
    CHECK(small(theta({3, 2, 3, 4})) == 181);
    CHECK(small(theta({3, 2, 2, 2})) == 19);
    CHECK(small(theta({2, 2, 2, 2})) == 11);
    CHECK(small(theta({1, 1, 3, 2})) == 7);
    CHECK(small(theta({1, 0, 3, 2})) == 6);

    CHECK_THROWS_AS(theta({2, 1, 1, 4}), std::invalid_argument);  // d < 2
    CHECK_THROWS_AS(theta({0, 0, 2, 4}), std::invalid_argument);  // n < 1
    CHECK_THROWS_AS(theta({2, 3, 2, 4}), std::invalid_argument);  // k > n
    CHECK_THROWS_AS(theta({2, -1, 2, 4}), std::invalid_argument); // k < 0
    CHECK_THROWS_AS(theta({2, 1, 2, 6}), std::invalid_argument);  // q not a prime power
}

TEST_CASE("serre bound and the k = n identity") {
    CHECK(small(serre_bound(2, 2, 2)) == 11);
    CHECK(small(serre_bound(3, 1, 2)) == 7);
    for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull})
        for (std::int64_t n = 1; n <= 4; ++n)
            for (std::int64_t d = 2; d <= std::int64_t(q) + 1; ++d)
                CHECK(serre_bound(d, n, q) == theta({n, n, d, q}));
}

TEST_CASE("singular k=0 bound") {
    for (std::uint64_t q : kPrimePowers9)
        for (std::int64_t n = 1; n <= 4; ++n)
            CHECK(small(singular_k0_bound(2, n, q)) == 1);
    CHECK(small(singular_k0_bound(3, 2, 4)) == 22); // 16 + 5 + 1
    for (std::uint64_t q : kPrimePowers9)
        for (std::int64_t n = 1; n <= 5; ++n)
            for (std::int64_t d = 2; d <= std::int64_t(q) + 1; ++d)
                CHECK(singular_k0_bound(d, n, q) <= theta({n, 0, d, q}));
}

TEST_CASE("homma k=0 comparison bound") {
    for (std::uint64_t q : kPrimePowers9)
        for (std::int64_t n = 1; n <= 4; ++n)
            CHECK(homma_k0_bound(2, n, q) == theta({n, 0, 2, q}));
    CHECK(small(homma_k0_bound(3, 2, 4)) == 34);
    // theta - homma = (d-2) q^{n-1}
    for (std::uint64_t q : kPrimePowers9)
        for (std::int64_t n = 1; n <= 5; ++n)
            for (std::int64_t d = 2; d <= std::int64_t(q) + 1; ++d) {
                BigInt lhs = theta({n, 0, d, q}) - homma_k0_bound(d, n, q);
                BigInt rhs = BigInt(d - 2);
                for (std::int64_t i = 0; i < n - 1; ++i) rhs *= q;
                CHECK(lhs == rhs);
            }
}

TEST_CASE("theta monotone in k and the d vs q+1 threshold") {
    for (std::uint64_t q : kPrimePowers9)
        for (std::int64_t n = 1; n <= 5; ++n)
            for (std::int64_t d = 2; d <= std::int64_t(q) + 1; ++d)
                for (std::int64_t k = 1; k < n; ++k)
                    CHECK(theta({n, k, d, q}) <= theta({n, k + 1, d, q}));

    // theta <= N(P^{n+1}) iff d <= q+1; equality for k > 0 iff d = q+1
    for (std::uint64_t q : kPrimePowers9)
        for (std::int64_t n = 1; n <= 5; ++n)
            for (std::int64_t d = 2; d <= std::int64_t(q) + 2; ++d)
                for (std::int64_t k = 0; k <= n; ++k) {
                    BigInt th = theta({n, k, d, q});
                    BigInt amb = proj_count128(n + 1, q);
                    CHECK((th <= amb) == (d <= std::int64_t(q) + 1));
                    if (k > 0) CHECK((th == amb) == (d == std::int64_t(q) + 1));
                }
}

TEST_CASE("quadric cone counts") {
    for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull})
        CHECK(small(quadric_cone_count(2, -1, QuadricKind::hyperbolic, q)) ==
              (q + 1) * (q + 1));
    CHECK(small(quadric_cone_count(2, -1, QuadricKind::elliptic, 2)) == 5);

    // sign check for the elliptic branch against brute-force enumeration
    {
        FieldCtx f2(2, 1);
        // alpha = 1 has absolute trace 1 over F_2
        HomogPoly e2 = parse_form(f2, "X0^2+X0*X1+X1^2+X2*X3", 4);
        CHECK(count_points(f2, e2) ==
              small(quadric_cone_count(2, -1, QuadricKind::elliptic, 2)));
        FieldCtx f3(3, 1);
        // 1-4*2 = -7 = 2 mod 3 is a non-square
        HomogPoly e3 = parse_form(f3, "2*X0^2+X0*X1+X1^2+X2*X3", 4);
        CHECK(count_points(f3, e3) ==
              small(quadric_cone_count(2, -1, QuadricKind::elliptic, 3)));
        // hyperbolic brute force too
        HomogPoly h2 = parse_form(f2, "X0*X1+X2*X3", 4);
        CHECK(count_points(f2, h2) ==
              small(quadric_cone_count(2, -1, QuadricKind::hyperbolic, 2)));
        // parabolic (conic in P^2) brute force
        HomogPoly c3 = parse_form(f3, "X0^2+X1*X2", 3);
        CHECK(count_points(f3, c3) ==
              small(quadric_cone_count(1, -1, QuadricKind::parabolic, 3)));
    }

    // any parabolic cone fills out N(P^n)
    for (std::uint64_t q : {2ull, 3ull, 4ull})
        for (std::int64_t n = 1; n <= 5; ++n)
            for (std::int64_t h = -1; h < n; ++h) {
                if ((n - h) % 2 != 0) continue;
                CHECK(quadric_cone_count(n, h, QuadricKind::parabolic, q) ==
                      proj_count128(n, q));
            }

    // hyperbolic surface count equals theta(2,1,2,q); elliptic stays at q^2+1
    for (std::uint64_t q : kPrimePowers9) {
        CHECK(quadric_cone_count(2, -1, QuadricKind::hyperbolic, q) == theta({2, 1, 2, q}));
        CHECK(small(quadric_cone_count(2, -1, QuadricKind::elliptic, q)) == q * q + 1);
        CHECK(quadric_cone_count(2, -1, QuadricKind::elliptic, q) < theta({2, 1, 2, q}));
    }

    // parity violations
    CHECK_THROWS_AS(quadric_cone_count(2, -1, QuadricKind::parabolic, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(quadric_cone_count(2, 0, QuadricKind::hyperbolic, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(quadric_cone_count(3, 3, QuadricKind::parabolic, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(quadric_cone_count(2, -2, QuadricKind::hyperbolic, 2),
                    std::invalid_argument);

    // vertex recursion: cone over a hyperbolic quadric surface in P^3, vertex a point
    for (std::uint64_t q : {2ull, 3ull}) {
        BigInt base = quadric_cone_count(2, -1, QuadricKind::hyperbolic, q);
        CHECK(quadric_cone_count(3, 0, QuadricKind::hyperbolic, q) == BigInt(q) * base + 1);
    }
}

TEST_CASE("128-bit headroom and printing") {
    CHECK(bigint_to_string(0) == "0");
    CHECK(bigint_to_string(1234567890123456789ull) == "1234567890123456789");
    // theta(5,2,17,65536) = 16 * q^2 * N(P^3) + N(P^2) exceeds 64 bits
    BigInt q = 65536;
    BigInt np3 = ((q * q) * q) + (q * q) + q + 1;
    BigInt expect = BigInt(16) * q * q * np3 + (q * q + q + 1);
    CHECK(expect > BigInt(UINT64_MAX));
    CHECK(theta({5, 2, 17, 65536}) == expect);
    CHECK(bigint_to_string(expect) == bigint_to_string(theta({5, 2, 17, 65536})));
}
