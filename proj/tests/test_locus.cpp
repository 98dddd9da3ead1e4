#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fqhb/locus.hpp"

#include <set>

using namespace fqhb;

namespace {

// brute-force invariant: maximum flat dimension over ALL flats of P^{nv-1}
int brute_k(const FieldCtx& F, const HomogPoly& f) {
    int best = -1;
    std::uint32_t N = f.nvars - 1;
    for (std::uint32_t k = 0; k <= N; ++k)
        for (const auto& L : enumerate_flats(F, N, k))
            if (restrict_to_flat(F, f, L).is_zero()) best = int(k);
    return best;
}

// the standard degree-(q+1) space-filling cubic in P^3(F_2):
// X0 X1^2 + X1 X0^2 + X2 X3^2 + X3 X2^2  (antisymmetric pairing, full rank)
HomogPoly space_filling_f2(const FieldCtx& f2) {
    return parse_form(f2, "X0*X1^2+X1*X0^2+X2*X3^2+X3*X2^2", 4);
}

} // namespace

TEST_CASE("flat containment is symbolic") {
    FieldCtx f2(2, 1);
    HomogPoly hyp = parse_form(f2, "X0*X1+X2*X3", 4);
    Flat L = span(f2, {ProjPoint{{1, 0, 0, 0}}, ProjPoint{{0, 0, 1, 0}}});
    CHECK(flat_contained(f2, hyp, L));

    // an irreducible conic contains no line
    FieldCtx f3(3, 1);
    HomogPoly conic = parse_form(f3, "X0^2+X1*X2", 3);
    for (const auto& line : enumerate_flats(f3, 2, 1))
        CHECK_FALSE(flat_contained(f3, conic, line));

    // space-filling: every rational point is on X, yet no plane is contained
    HomogPoly sf = space_filling_f2(f2);
    CHECK(count_points(f2, sf) == 15);
    for (const auto& plane : enumerate_flats(f2, 3, 2)) {
        bool all_on = true;
        for (const auto& p : flat_points(f2, plane)) all_on &= evaluate(f2, sf, p) == 0;
        CHECK(all_on);
        CHECK_FALSE(flat_contained(f2, sf, plane));
    }

    CHECK_THROWS_AS(flat_contained(f2, hyp, Flat::empty(4)), std::invalid_argument);

    // for d <= q symbolic containment and point coverage agree: all conics
    // against all lines of P^2(F_3)
    auto lines3 = enumerate_flats(f3, 2, 1);
    std::uint64_t nforms = 364; // scalar classes of nonzero 6-coefficient vectors
    for (std::uint64_t i = 0; i < nforms; ++i) {
        ProjPoint cv = point_at(f3, 5, i);
        HomogPoly g = from_coeffs(3, 2, cv.c);
        for (const auto& line : lines3) {
            bool cover = true;
            for (const auto& p : flat_points(f3, line))
                cover &= evaluate(f3, g, p) == 0;
            CHECK(flat_contained(f3, g, line) == cover);
        }
    }
}

TEST_CASE("singular points") {
    FieldCtx f2(2, 1);
    CHECK(singular_points(f2, parse_form(f2, "X0*X1+X2*X3", 4)).empty());

    // (X0+X1+X2)^2 in char 2: every partial is formally zero
    HomogPoly sq = parse_form(f2, "X0^2+X1^2+X2^2", 3); // = (X0+X1+X2)^2
    auto s = singular_points(f2, sq);
    CHECK(s.size() == 3);
    for (const auto& p : s) CHECK(evaluate(f2, sq, p) == 0);

    FieldCtx f4(2, 2);
    HomogPoly cone = parse_form(f4, "X0^3+X1^3+X2^3+X3^3", 5); // cone vertex e4
    auto cs = singular_points(f4, cone);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].c == std::vector<Fe>{0, 0, 0, 0, 1});
}

TEST_CASE("tangent flats") {
    FieldCtx f2(2, 1);
    HomogPoly hyp = parse_form(f2, "X0*X1+X2*X3", 4);
    Flat t = tangent_flat(f2, hyp, ProjPoint{{1, 0, 0, 0}});
    CHECK(t.dim == 2);
    CHECK(flat_to_string(t) == "1,0,0,0;0,0,1,0;0,0,0,1"); // the hyperplane X1 = 0

    FieldCtx f3(3, 1);
    HomogPoly conic = parse_form(f3, "X0^2+X1*X2", 3);
    Flat tc = tangent_flat(f3, conic, ProjPoint{{0, 1, 0}});
    CHECK(tc.dim == 1);
    CHECK(flat_to_string(tc) == "1,0,0;0,1,0"); // the line X2 = 0

    // a quadric point lies in its own tangent hyperplane
    for (std::uint64_t i = 0; i < proj_count(3, 2); ++i) {
        ProjPoint p = point_at(f2, 3, i);
        if (evaluate(f2, hyp, p) != 0) continue;
        CHECK(flat_contains_point(f2, tangent_flat(f2, hyp, p), p));
    }

    CHECK_THROWS_AS(tangent_flat(f2, hyp, ProjPoint{{1, 1, 0, 0}}), std::invalid_argument);
    HomogPoly sq = parse_form(f2, "X0^2+X1^2+X2^2", 3);
    CHECK_THROWS_AS(tangent_flat(f2, sq, ProjPoint{{1, 1, 0}}), std::invalid_argument);
}

TEST_CASE("thas invariant on reference surfaces") {
    FieldCtx f2(2, 1);
    auto hyp = thas_invariant(f2, parse_form(f2, "X0*X1+X2*X3", 4));
    CHECK(hyp.k == 1);
    CHECK(hyp.max_flats.size() == 6); // two rulings of three lines each
    CHECK(hyp.witness.dim == 1);

    auto ell = thas_invariant(f2, parse_form(f2, "X0^2+X0*X1+X1^2+X2*X3", 4));
    CHECK(ell.k == 0);
    CHECK(ell.max_flats.size() == 5);

    auto planes = thas_invariant(f2, parse_form(f2, "X0*X1", 4));
    CHECK(planes.k == 2);
    CHECK(planes.max_flats.size() == 2);

    // no rational point at all: k = -1 with an empty witness
    auto none = thas_invariant(f2, parse_form(f2, "X0^2+X0*X1+X1^2", 2));
    CHECK(none.k == -1);
    CHECK(none.witness.dim == -1);

    auto sf = thas_invariant(f2, space_filling_f2(f2));
    CHECK(sf.k == 1);
}

TEST_CASE("thas invariant matches brute force over every flat") {
    FieldCtx f2(2, 1);
    // all 1023 quadric classes in P^3(F_2) (coefficient vectors are already
    // scalar classes at q = 2)
    for (std::uint64_t i = 0; i < 1023; ++i) {
        ProjPoint cv = point_at(f2, 9, i);
        HomogPoly f = from_coeffs(4, 2, cv.c);
        CHECK(thas_invariant(f2, f).k == brute_k(f2, f));
    }
    // all 1023 cubic classes in P^2(F_2): d = q + 1 exercises the symbolic
    // containment path
    for (std::uint64_t i = 0; i < 1023; ++i) {
        ProjPoint cv = point_at(f2, 9, i);
        HomogPoly f = from_coeffs(3, 3, cv.c);
        CHECK(thas_invariant(f2, f).k == brute_k(f2, f));
    }
}

TEST_CASE("cone apexes") {
    FieldCtx f4(2, 2);
    HomogPoly cone = parse_form(f4, "X0^3+X1^3+X2^3+X3^3", 5);
    auto ap = cone_apexes(f4, cone);
    REQUIRE(ap.size() == 1);
    CHECK(ap[0].c == std::vector<Fe>{0, 0, 0, 0, 1});

    FieldCtx f2(2, 1);
    CHECK(cone_apexes(f2, parse_form(f2, "X0*X1+X2*X3", 4)).empty());

    // plane pair: every point of the common line X0 = X1 = 0 is an apex
    auto pp = cone_apexes(f2, parse_form(f2, "X0*X1", 4));
    CHECK(pp.size() == 3);
    std::set<std::vector<Fe>> sing_set;
    for (const auto& s : singular_points(f2, parse_form(f2, "X0*X1", 4)))
        sing_set.insert(s.c);
    for (const auto& a : pp) CHECK(sing_set.count(a.c) == 1);
}

TEST_CASE("lemma checks on maximizers") {
    FieldCtx f2(2, 1);
    // hyperbolic quadric: N = 9 = theta(2,1,2,2); nonsingular
    auto hyp = lemma_checks(f2, parse_form(f2, "X0*X1+X2*X3", 4));
    CHECK(hyp.on_flat_ok);
    CHECK(hyp.sing_on_all_ok);
    CHECK(hyp.tangent_applicable);
    CHECK(hyp.tangent_count_ok);
    CHECK(hyp.passed());

    // space-filling cubic: tangent sections carry theta(1,1,3,2) = 7 points
    auto sf = lemma_checks(f2, space_filling_f2(f2));
    CHECK(sf.passed());

    // plane pair X0 X1: k = n, singular line lies on both planes; the
    // tangent-section law is vacuous at k = n
    auto pp = lemma_checks(f2, parse_form(f2, "X0*X1", 4));
    CHECK(pp.on_flat_ok);
    CHECK(pp.sing_on_all_ok);
    CHECK_FALSE(pp.tangent_applicable);
    CHECK(pp.passed());

    // non-maximizer rejected: the Fermat cubic surface over F_2 has N = 7 < 15
    CHECK_THROWS_AS(lemma_checks(f2, parse_form(f2, "X0^3+X1^3+X2^3+X3^3", 4)),
                    std::invalid_argument);
    // k = 0 rejected (elliptic quadric)
    CHECK_THROWS_AS(lemma_checks(f2, parse_form(f2, "X0^2+X0*X1+X1^2+X2*X3", 4)),
                    std::invalid_argument);
}

TEST_CASE("invariant report and JSON") {
    FieldCtx f2(2, 1);
    auto rep = invariant_report(f2, parse_form(f2, "X0*X1+X2*X3", 4));
    CHECK(rep.N == 9);
    CHECK(rep.k == 1);
    CHECK(rep.sing_rational.empty());
    CHECK(rep.apexes.empty());
    CHECK(rep.has_theta);
    CHECK(rep.theta_value == 9);
    CHECK(rep.is_maximizer);
    CHECK(flat_contained(f2, parse_form(f2, "X0*X1+X2*X3", 4), rep.witness));
    CHECK(invariant_report_json(rep) ==
          "{\"N\":9,\"k\":1,\"witness\":\"0,1,0,0;0,0,0,1\",\"sing_rational\":[],"
          "\"apexes\":[],\"theta\":9,\"is_maximizer\":true}");

    // a pointless plane cubic over F_2 (found by scan): k = -1, theta null
    bool found = false;
    for (std::uint64_t i = 0; i < 1023 && !found; ++i) {
        ProjPoint cv = point_at(f2, 9, i);
        HomogPoly f = from_coeffs(3, 3, cv.c);
        if (count_points(f2, f) != 0) continue;
        found = true;
        auto r0 = invariant_report(f2, f);
        CHECK(r0.N == 0);
        CHECK(r0.k == -1);
        CHECK_FALSE(r0.has_theta);
        CHECK_FALSE(r0.is_maximizer);
        std::string js = invariant_report_json(r0);
        CHECK(js.find("\"theta\":null") != std::string::npos);
        CHECK(js.find("\"note\"") != std::string::npos);
    }
    CHECK(found);

    CHECK_THROWS_AS(invariant_report(f2, parse_form(f2, "X0+X1", 3)),
                    std::invalid_argument); // degree 1
    CHECK_THROWS_AS(invariant_report(f2, parse_form(f2, "X0^2+X0*X1+X1^2", 2)),
                    std::invalid_argument); // nvars 2
}

TEST_CASE("extension-field singular scan") {
    FieldCtx f2(2, 1);
    // smooth quadric stays smooth over F_4 and F_8
    auto smooth = singular_scan_ext(f2, parse_form(f2, "X0*X1+X2*X3", 4), 2);
    CHECK(smooth.m_checked == 2);
    CHECK_FALSE(smooth.any_singular);

    // conic times a secant line meeting it in two conjugate points: no
    // rational singular point, but singular over F_4
    HomogPoly g = parse_form(f2,
        "X0^3+X0^2*X1+X0^2*X2+X0*X1*X2+X1^2*X2+X1*X2^2", 3);
    // (X0^2+X1*X2)(X0+X1+X2) expanded over F_2
    CHECK(singular_points(f2, g).empty());
    auto scan = singular_scan_ext(f2, g, 2);
    CHECK(scan.m_checked == 2);
    CHECK(scan.any_singular);
}
