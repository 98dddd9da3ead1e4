#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fqhb/gf.hpp"

#include <set>

using namespace fqhb;

namespace {

// All prime powers q <= 64 as (p, r), the sizes every exhaustive check runs on.
std::vector<std::pair<std::uint32_t, std::uint32_t>> small_fields() {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t p = 2; p <= 64; ++p) {
        if (!is_prime_u32(p)) continue;
        std::uint64_t q = p;
        std::uint32_t r = 1;
        while (q <= 64) {
            out.push_back({p, r});
            q *= p;
            ++r;
        }
    }
    return out;
}

} // namespace

TEST_CASE("field construction and defaults") {
    FieldCtx f2(2, 1);
    CHECK(f2.q() == 2);
    CHECK(f2.add(1, 1) == 0);

    FieldCtx f4(2, 2);
    CHECK(f4.q() == 4);
    CHECK(f4.modulus() == std::vector<std::uint16_t>{1, 1, 1}); // x^2+x+1
    Fe g = f4.generator();
    CHECK(f4.mul(g, g) == f4.add(g, 1));        // g^2 = g+1
    CHECK(f4.mul(g, f4.mul(g, g)) == 1);        // g^3 = 1
    CHECK(f4.to_string(g) == "g^1");
    CHECK(f4.to_string(0) == "0");

    FieldCtx f16(2, 4);
    CHECK(f16.modulus() == std::vector<std::uint16_t>{1, 1, 0, 0, 1}); // x^4+x+1
    FieldCtx f8(2, 3);
    CHECK(f8.modulus() == std::vector<std::uint16_t>{1, 1, 0, 1}); // x^3+x+1

    CHECK_THROWS_AS(field_create(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(field_create(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(field_create(2, 17), std::invalid_argument);
    CHECK_THROWS_AS(field_create(257, 2), std::invalid_argument);

    // x^2+1 = (x+1)^2 over F_2: reducible modulus must be rejected.
    CHECK_THROWS_AS(field_create(2, 2, {1, 0, 1}), std::invalid_argument);
    // A valid custom modulus other than the default one.
    FieldCtx f4b(2, 2, {1, 1, 1});
    CHECK(f4b.q() == 4);
    FieldCtx f9b(3, 2, {2, 2, 1}); // x^2+2x+2, irreducible over F_3
    CHECK(f9b.q() == 9);
    CHECK_THROWS_AS(field_create(3, 2, {2, 1}), std::invalid_argument);   // wrong degree
    CHECK_THROWS_AS(field_create(3, 2, {1, 0, 2}), std::invalid_argument); // not monic
}

TEST_CASE("field spec parsing") {
    CHECK(field_from_spec("2^4").q() == 16);
    CHECK(field_from_spec("16").q() == 16);
    CHECK(field_from_spec("7").q() == 7);
    CHECK(field_from_spec("49").q() == 49);
    CHECK_THROWS_AS(field_from_spec("12"), std::invalid_argument);
    CHECK_THROWS_AS(field_from_spec("1"), std::invalid_argument);
    CHECK_THROWS_AS(field_from_spec("abc"), std::invalid_argument);
    CHECK_THROWS_AS(field_from_spec("2^"), std::invalid_argument);
    CHECK_THROWS_AS(field_from_spec(""), std::invalid_argument);
}

TEST_CASE("field axioms exhaustively on all q <= 64") {
    for (auto [p, r] : small_fields()) {
        FieldCtx F(p, r);
        std::uint32_t q = F.q();
        // identities and inverses
        for (std::uint32_t a = 0; a < q; ++a) {
            CHECK(F.add(Fe(a), 0) == Fe(a));
            CHECK(F.mul(Fe(a), 1) == Fe(a));
            CHECK(F.add(Fe(a), F.neg(Fe(a))) == 0);
            if (a != 0) CHECK(F.mul(Fe(a), F.inv(Fe(a))) == 1);
        }
        CHECK_THROWS_AS(F.inv(0), std::invalid_argument);
        // commutativity on all pairs
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b) {
                CHECK(F.add(Fe(a), Fe(b)) == F.add(Fe(b), Fe(a)));
                CHECK(F.mul(Fe(a), Fe(b)) == F.mul(Fe(b), Fe(a)));
            }
        // associativity + distributivity on all triples
        bool ok = true;
        for (std::uint32_t a = 0; a < q && ok; ++a)
            for (std::uint32_t b = 0; b < q && ok; ++b)
                for (std::uint32_t c = 0; c < q && ok; ++c) {
                    Fe fa = Fe(a), fb = Fe(b), fc = Fe(c);
                    if (F.add(F.add(fa, fb), fc) != F.add(fa, F.add(fb, fc))) ok = false;
                    if (F.mul(F.mul(fa, fb), fc) != F.mul(fa, F.mul(fb, fc))) ok = false;
                    if (F.mul(fa, F.add(fb, fc)) != F.add(F.mul(fa, fb), F.mul(fa, fc)))
                        ok = false;
                }
        CHECK_MESSAGE(ok, "axioms fail in F_", q);
    }
}

TEST_CASE("pow agrees with repeated multiplication") {
    for (auto [p, r] : {std::pair<std::uint32_t, std::uint32_t>{2, 4}, {3, 2}, {5, 1}, {7, 1}}) {
        FieldCtx F(p, r);
        for (std::uint32_t a = 0; a < F.q(); ++a) {
            Fe acc = 1;
            for (std::uint32_t e = 0; e <= 2 * F.q(); ++e) {
                CHECK(F.pow(Fe(a), e) == acc);
                acc = F.mul(acc, Fe(a));
            }
        }
        CHECK(F.pow(0, 0) == 1);
        // exponents reduce mod q-1 on nonzero bases
        Fe g = F.generator();
        CHECK(F.pow(g, std::uint64_t(F.q() - 1) * 1000003 + 5) == F.pow(g, 5));
    }
}

TEST_CASE("frobenius_sqrt is the order-2 automorphism fixing F_sqrt(q)") {
    FieldCtx f4(2, 2);
    Fe g = f4.generator();
    CHECK(f4.frobenius_sqrt(g) == f4.add(g, 1)); // g -> g^2 = g+1
    CHECK(f4.frobenius_sqrt(Fe(1)) == 1);

    for (auto [p, r] : small_fields()) {
        if (r % 2 != 0) continue;
        FieldCtx F(p, r);
        std::uint32_t fixed = 0;
        for (std::uint32_t a = 0; a < F.q(); ++a) {
            Fe fa = F.frobenius_sqrt(Fe(a));
            CHECK(F.frobenius_sqrt(fa) == Fe(a));
            if (fa == Fe(a)) ++fixed;
            for (std::uint32_t b = 0; b < F.q(); ++b) {
                CHECK(F.frobenius_sqrt(F.add(Fe(a), Fe(b))) ==
                      F.add(fa, F.frobenius_sqrt(Fe(b))));
                CHECK(F.frobenius_sqrt(F.mul(Fe(a), Fe(b))) ==
                      F.mul(fa, F.frobenius_sqrt(Fe(b))));
            }
        }
        CHECK(fixed == F.sqrt_q()); // fixed field is exactly GF(sqrt(q))
    }
    CHECK_THROWS_AS(FieldCtx(2, 3).frobenius_sqrt(1), std::invalid_argument);
}

TEST_CASE("absolute trace: values, linearity, surjectivity") {
    FieldCtx f2(2, 1);
    CHECK(f2.abs_trace(1) == 1);
    FieldCtx f4(2, 2);
    CHECK(f4.abs_trace(f4.generator()) == 1); // tr(g) = g + g^2 = 1
    CHECK(f4.abs_trace(0) == 0);

    for (auto [p, r] : small_fields()) {
        FieldCtx F(p, r);
        std::set<std::uint32_t> image;
        std::uint32_t zeros = 0;
        for (std::uint32_t a = 0; a < F.q(); ++a) {
            std::uint32_t t = F.abs_trace(Fe(a));
            image.insert(t);
            if (t == 0) ++zeros;
            // additivity
            for (std::uint32_t b = 0; b < F.q(); ++b) {
                std::uint32_t tb = F.abs_trace(Fe(b));
                CHECK(F.abs_trace(F.add(Fe(a), Fe(b))) == (t + tb) % p);
            }
            // invariance under Frobenius x -> x^p
            CHECK(F.abs_trace(F.pow(Fe(a), p)) == t);
        }
        CHECK(image.size() == p);          // surjective onto F_p
        CHECK(zeros == F.q() / p);         // kernel has index p
    }
}

TEST_CASE("is_square matches both brute force and the Euler criterion") {
    FieldCtx f3(3, 1);
    CHECK_FALSE(f3.is_square(2));
    FieldCtx f5(5, 1);
    CHECK(f5.is_square(4));

    for (auto [p, r] : small_fields()) {
        FieldCtx F(p, r);
        std::set<Fe> squares;
        for (std::uint32_t y = 0; y < F.q(); ++y) squares.insert(F.mul(Fe(y), Fe(y)));
        std::uint32_t nonzero_squares = 0;
        for (std::uint32_t a = 0; a < F.q(); ++a) {
            bool expect = squares.count(Fe(a)) > 0;
            CHECK(F.is_square(Fe(a)) == expect);
            if (p != 2 && a != 0)
                CHECK(F.is_square(Fe(a)) == (F.pow(Fe(a), (F.q() - 1) / 2) == 1));
            if (expect && a != 0) ++nonzero_squares;
        }
        CHECK(nonzero_squares == (p == 2 ? F.q() - 1 : (F.q() - 1) / 2));
    }
}

TEST_CASE("default moduli table is complete and every entry builds") {
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (const auto& e : default_moduli()) {
        CHECK(seen.insert({e.p, e.r}).second);
        CHECK(e.r >= 2);
        CHECK(e.coeffs.size() == e.r + 1);
        CHECK(e.coeffs.back() == 1);
        // Constructing the field re-verifies irreducibility and finds a
        // generator of full order; a bad table entry would throw here.
        FieldCtx F(e.p, e.r);
        CHECK(F.modulus() == e.coeffs);
        CHECK(F.q() <= 65536);
    }
    // every (p, r) with r >= 2 and p^r <= 2^16 is covered
    std::size_t expected = 0;
    for (std::uint32_t p = 2; p <= 256; ++p) {
        if (!is_prime_u32(p)) continue;
        std::uint64_t q = std::uint64_t(p) * p;
        std::uint32_t r = 2;
        while (q <= 65536) {
            CHECK(seen.count({p, r}) == 1);
            ++expected;
            q *= p;
            ++r;
        }
    }
    CHECK(seen.size() == expected);
}

TEST_CASE("largest supported field works end to end") {
    FieldCtx F(2, 16);
    CHECK(F.q() == 65536);
    Fe g = F.generator();
    CHECK(F.pow(g, F.q() - 1) == 1);
    CHECK(F.pow(g, (F.q() - 1) / 3) != 1);
    CHECK(F.mul(F.inv(12345), 12345) == 1);
    CHECK(F.frobenius_sqrt(F.frobenius_sqrt(54321)) == 54321);
}
