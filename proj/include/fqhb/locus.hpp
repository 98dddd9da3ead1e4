#pragma once
// Geometric predicates on a hypersurface X = {F = 0} in P^{n+1}(F_q):
// rational singular points, tangent hyperplanes, symbolic flat containment,
// the invariant k_X = max dim of a contained rational flat (with witness),
// cone apex detection, and the property checks used on maximizers.
//
// Containment is symbolic: a flat is contained iff the restriction of F to
// it is the zero polynomial.  For d <= q this coincides with all rational
// points of the flat lying on X; for d = q+1 it is strictly stronger (a
// space-filling hypersurface passes through every rational point yet
// contains no hyperplane).

#include "fqhb/bounds.hpp"
#include "fqhb/forms.hpp"
#include "fqhb/gf.hpp"
#include "fqhb/projgeom.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fqhb {

// true iff restrict(F, L) is identically zero; requires dim L >= 0.
bool flat_contained(const FieldCtx& F, const HomogPoly& f, const Flat& L);

// All rational points p with f(p) = 0 and every partial derivative zero at
// p.  f(p) = 0 is tested explicitly: Euler's relation degenerates when the
// characteristic divides the degree.
std::vector<ProjPoint> singular_points(const FieldCtx& F, const HomogPoly& f);

// The tangent hyperplane sum_i dF/dX_i(p) X_i = 0 at a nonsingular rational
// point p of X, as a flat of dimension nvars - 2.  Throws if p is off X or
// singular.
Flat tangent_flat(const FieldCtx& F, const HomogPoly& f, const ProjPoint& p);

struct ThasResult {
    int k = -1;            // max dim of a contained flat; -1 iff X(F_q) empty
    Flat witness;          // contained flat of dim k (empty flat when k = -1)
    std::vector<Flat> max_flats; // every contained k-flat, sorted
};

// Layered search: rational points of X seed dimension 0; each contained
// flat is extended by each rational point of X outside it, spans are
// canonicalized, deduplicated, and kept when the restriction vanishes.
// Every contained flat of every dimension arises this way.  When d <= q
// the containment test uses rational-point coverage (equivalent in that
// range and cheaper); the returned witness is always re-verified
// symbolically.
ThasResult thas_invariant(const FieldCtx& F, const HomogPoly& f);

// All rational points p such that X is a cone with apex p: after an
// invertible coordinate change sending p to (1:0:...:0) the form does not
// mention the first variable.  Candidates are the rational singular points
// (every apex is singular), so the scan is complete.
std::vector<ProjPoint> cone_apexes(const FieldCtx& F, const HomogPoly& f);

struct LemmaReport {
    bool on_flat_ok = true;       // every rational point of X on a contained k-flat
    bool sing_on_all_ok = true;   // every rational singular point on every k-flat
    bool tangent_count_ok = true; // tangent sections count Theta_{n-1,k}
    bool tangent_applicable = false; // only meaningful when 0 < k <= n-1
    std::optional<ProjPoint> counterexample;
    bool passed() const { return on_flat_ok && sing_on_all_ok && tangent_count_ok; }
};

// Property checks valid for a maximizer (N = Theta_{n,k}, k > 0); throws
// std::invalid_argument when the precondition fails.
LemmaReport lemma_checks(const FieldCtx& F, const HomogPoly& f);

struct InvariantReport {
    std::uint64_t N = 0;
    int k = -1;
    Flat witness;
    std::vector<ProjPoint> sing_rational;
    std::vector<ProjPoint> apexes;
    bool has_theta = false; // false iff k = -1 (theta undefined)
    BigInt theta_value = 0;
    bool is_maximizer = false;
    // context echoed for reproducibility
    std::uint32_t n = 0, d = 0;
    std::uint64_t q = 0;
    std::string modulus;
    std::vector<Flat> max_flats;
};

// Full report; requires nvars >= 3 (n >= 1) and degree >= 2 so the bounds
// are defined.  N <= theta is asserted (a violation would contradict the
// counting propositions and aborts with std::logic_error).
InvariantReport invariant_report(const FieldCtx& F, const HomogPoly& f);

// Fixed key order: N, k, witness, sing_rational, apexes, theta,
// is_maximizer; a "note" key is appended when k = -1.
std::string invariant_report_json(const InvariantReport& rep);

struct ExtSingScan {
    std::uint32_t m_checked = 1; // largest m with a full scan of F_{q^m}
    bool any_singular = false;
    std::optional<std::string> first; // coordinates in the extension field
};

// Heuristic geometric-smoothness probe: scans for singular points with
// coordinates in F_{q^m} for 2 <= m <= m_max, skipping any m where q^m or
// the point count is out of range.  Exact only as far as it scanned.
ExtSingScan singular_scan_ext(const FieldCtx& F, const HomogPoly& f,
                              std::uint32_t m_max = 3);

} // namespace fqhb
