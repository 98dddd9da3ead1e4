#pragma once
// Exhaustive or randomized survey of degree-d hypersurfaces in P^{n+1}(F_q):
// per-form records, bound verification, maximizer harvesting and
// classification, plus the exact projective-equivalence search for small
// groups and the theorem verification driver.

#include "fqhb/families.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace fqhb {

enum class CensusMode { exhaustive, random_sample };

struct CensusOptions {
    CensusMode mode = CensusMode::exhaustive;
    std::uint64_t random_count = 0; // forms to sample in random mode
    std::uint64_t seed = 0;
    std::uint32_t shards = 1;       // contiguous index ranges, one thread each
    std::uint64_t budget = 0;       // 0: census_default_budget()
    bool verify = false;            // flag unrecognized maximizer labels
    bool cross_check = false;       // recount every N with the sparse evaluator
};

struct CensusRecord {
    std::uint64_t q = 0;
    std::uint32_t d = 0, n = 0;
    std::string coeff_id;
    std::uint64_t N = 0;
    int k = -1;
    std::uint64_t sing_count = 0;
    bool is_max = false;
    FamilyLabel label = FamilyLabel::NON_MAXIMIZER;
};

struct CensusSummary {
    std::uint64_t q = 0;
    std::uint32_t d = 0, n = 0;
    std::string mode;
    std::uint64_t total_forms = 0; // records produced
    std::uint64_t class_count = 0; // scalar classes in the index space
    std::map<int, std::uint64_t> max_N_per_k;
    std::map<std::string, std::uint64_t> maximizer_counts;
    std::vector<std::string> violations;
    double wall_seconds = 0.0;
    std::uint32_t shards = 1;
};

struct CensusResult {
    std::vector<CensusRecord> records;
    CensusSummary summary;
};

// 10^7 unless the FQHB_BUDGET environment variable overrides it.
std::uint64_t census_default_budget();

// Number of scalar classes of nonzero degree-d coefficient vectors in n+2
// variables: (q^M - 1)/(q - 1) for M monomials.
std::uint64_t census_class_count(const FieldCtx& F, std::uint32_t d, std::uint32_t n);

// Surveys one form per scalar class (exhaustive) or random_count sampled
// classes; records come out sorted by coefficient index, so shard output
// concatenates to a canonical order.  Exhaustive mode throws when the
// class count exceeds the budget.
CensusResult census(const FieldCtx& F, std::uint32_t d, std::uint32_t n,
                    const CensusOptions& opt = {});

// CSV serialization with header q,d,n,coeff_id,N,k,sing_count,is_max,label.
std::string census_csv(const std::vector<CensusRecord>& records);
std::string census_summary_json(const CensusSummary& s);

struct EquivResult {
    enum class Kind { equivalent, inequivalent, budget_exceeded };
    Kind kind = Kind::inequivalent;
    std::vector<Fe> matrix; // row-major witness, nvars x nvars, when equivalent
};

// Exact projective equivalence of two forms with the same (q, d, nvars) by
// exhaustive search over PGL_{nvars}(F_q), feasible while the group order
// stays within the budget.  Cheap invariants short-circuit first.
EquivResult equiv(const FieldCtx& F, const HomogPoly& A, const HomogPoly& B,
                  std::uint64_t budget = 1000000);

std::uint64_t pgl_order(std::uint32_t m, std::uint64_t q);

struct GridTuple {
    std::uint64_t q = 0;
    std::uint32_t d = 0, n = 0;
};

struct VerifyClause {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyClause> clauses;
    bool all_pass = false;
};

// k values for which some theorem family attains the bound at (q, d, n).
std::set<int> expected_max_ks(std::uint64_t q, std::uint32_t d, std::uint32_t n);

std::vector<GridTuple> default_grid();

// Runs a verify-mode census per tuple and checks, clause by clause: no
// bound violations, every maximizer classified, the lemma property suite
// on every maximizer with k > 0, maximizer coverage for each expected k,
// the constructed families attaining their counts, and the
// theta-equals-ambient characterization at d = q+1.
VerifyReport verify_theorems(const std::vector<GridTuple>& grid);

std::string verify_report_json(const VerifyReport& r);

} // namespace fqhb
