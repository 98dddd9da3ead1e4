#include "fqhb/census.hpp"

#include "fqhb/bounds.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace fqhb {

namespace {

using json = nlohmann::json;

std::string digits_to_id(const FieldCtx& F, const std::vector<Fe>& c) {
    std::string s;
    if (F.q() <= 36) {
        s.reserve(c.size());
        for (Fe v : c) s += v < 10 ? char('0' + v) : char('a' + v - 10);
    } else {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) s += '.';
            s += std::to_string(c[i]);
        }
    }
    return s;
}

// shared immutable per-(q, d, n) context: point lists, monomial and
// gradient value tables, per-flat restriction matrices, bound values
struct Tables {
    const FieldCtx* F = nullptr;
    std::uint32_t d = 0, n = 0, nvars = 0, M = 0;
    std::uint64_t q = 0;
    std::vector<ProjPoint> pts;
    std::vector<Fe> mono_vals; // [pt * M + m]
    std::vector<Fe> dvals;     // [(j * npts + pt) * M + m]
    bool bits = false;         // q = 2 packed path
    std::vector<std::uint64_t> mono_mask; // [pt]
    std::vector<std::uint64_t> dmask;     // [j * npts + pt]
    struct FlatEntry {
        Flat L;
        std::uint32_t Ms = 0;
        std::vector<Fe> rmat;             // [row * M + m]
        std::vector<std::uint64_t> rmask; // [row]
    };
    std::vector<std::vector<FlatEntry>> flats_by_dim; // [1..n]
    std::vector<BigInt> theta_k;                      // [0..n]
    BigInt sing_k0 = 0;
};

Tables build_tables(const FieldCtx& F, std::uint32_t d, std::uint32_t n) {
    Tables T;
    T.F = &F;
    T.d = d;
    T.n = n;
    T.nvars = n + 2;
    T.q = F.q();
    T.pts = all_points(F, n + 1);
    const auto& basis = monomial_basis(T.nvars, d);
    T.M = std::uint32_t(basis.size());
    T.bits = T.q == 2 && T.M <= 64;
    const std::size_t npts = T.pts.size();

    T.mono_vals.assign(npts * T.M, 0);
    T.dvals.assign(std::size_t(T.nvars) * npts * T.M, 0);
    for (std::uint32_t m = 0; m < T.M; ++m) {
        HomogPoly mono;
        mono.nvars = T.nvars;
        mono.degree = d;
        mono.terms.emplace(basis[m], Fe(1));
        auto grads = partials(F, mono);
        for (std::size_t pt = 0; pt < npts; ++pt) {
            T.mono_vals[pt * T.M + m] = evaluate(F, mono, T.pts[pt]);
            for (std::uint32_t j = 0; j < T.nvars; ++j)
                T.dvals[(std::size_t(j) * npts + pt) * T.M + m] =
                    grads[j].is_zero() ? Fe(0) : evaluate_raw(F, grads[j], T.pts[pt].c);
        }
    }
    if (T.bits) {
        T.mono_mask.assign(npts, 0);
        T.dmask.assign(std::size_t(T.nvars) * npts, 0);
        for (std::size_t pt = 0; pt < npts; ++pt) {
            for (std::uint32_t m = 0; m < T.M; ++m) {
                if (T.mono_vals[pt * T.M + m]) T.mono_mask[pt] |= std::uint64_t(1) << m;
                for (std::uint32_t j = 0; j < T.nvars; ++j)
                    if (T.dvals[(std::size_t(j) * npts + pt) * T.M + m])
                        T.dmask[std::size_t(j) * npts + pt] |= std::uint64_t(1) << m;
            }
        }
    }

    T.flats_by_dim.resize(n + 1);
    for (std::uint32_t s = 1; s <= n; ++s) {
        for (const Flat& L : enumerate_flats(F, n + 1, s)) {
            Tables::FlatEntry e;
            e.L = L;
            e.Ms = std::uint32_t(monomial_basis(s + 1, d).size());
            e.rmat.assign(std::size_t(e.Ms) * T.M, 0);
            for (std::uint32_t m = 0; m < T.M; ++m) {
                HomogPoly mono;
                mono.nvars = T.nvars;
                mono.degree = d;
                mono.terms.emplace(basis[m], Fe(1));
                auto col = to_coeffs(restrict_to_flat(F, mono, L));
                for (std::uint32_t row = 0; row < e.Ms; ++row)
                    e.rmat[std::size_t(row) * T.M + m] = col[row];
            }
            if (T.bits) {
                e.rmask.assign(e.Ms, 0);
                for (std::uint32_t row = 0; row < e.Ms; ++row)
                    for (std::uint32_t m = 0; m < T.M; ++m)
                        if (e.rmat[std::size_t(row) * T.M + m])
                            e.rmask[row] |= std::uint64_t(1) << m;
            }
            T.flats_by_dim[s].push_back(std::move(e));
        }
    }

    for (std::uint32_t k = 0; k <= n; ++k)
        T.theta_k.push_back(theta({n, k, std::int64_t(d), T.q}));
    T.sing_k0 = singular_k0_bound(d, n, T.q);
    return T;
}

CensusRecord make_record(const Tables& T, std::uint64_t idx, const CensusOptions& opt,
                         std::vector<std::string>& violations) {
    const FieldCtx& F = *T.F;
    const std::size_t npts = T.pts.size();
    ProjPoint cv = point_at(F, T.M - 1, idx);
    const std::vector<Fe>& c = cv.c;

    CensusRecord rec;
    rec.q = T.q;
    rec.d = T.d;
    rec.n = T.n;
    rec.coeff_id = digits_to_id(F, c);

    std::uint64_t cm = 0;
    if (T.bits)
        for (std::uint32_t m = 0; m < T.M; ++m)
            if (c[m]) cm |= std::uint64_t(1) << m;
    std::uint64_t N = 0;
    std::uint64_t sing = 0;
    if (T.bits) {
        for (std::size_t pt = 0; pt < npts; ++pt) {
            bool on = (std::popcount(cm & T.mono_mask[pt]) & 1) == 0;
            N += on;
            if (on) {
                bool s = true;
                for (std::uint32_t j = 0; j < T.nvars && s; ++j)
                    s = (std::popcount(cm & T.dmask[std::size_t(j) * npts + pt]) & 1) == 0;
                sing += s;
            }
        }
    } else {
        for (std::size_t pt = 0; pt < npts; ++pt) {
            Fe acc = 0;
            const Fe* row = &T.mono_vals[pt * T.M];
            for (std::uint32_t m = 0; m < T.M; ++m)
                if (c[m] && row[m]) acc = F.add(acc, F.mul(c[m], row[m]));
            bool on = acc == 0;
            N += on;
            if (on) {
                bool s = true;
                for (std::uint32_t j = 0; j < T.nvars && s; ++j) {
                    Fe g = 0;
                    const Fe* dr = &T.dvals[(std::size_t(j) * npts + pt) * T.M];
                    for (std::uint32_t m = 0; m < T.M; ++m)
                        if (c[m] && dr[m]) g = F.add(g, F.mul(c[m], dr[m]));
                    s = g == 0;
                }
                sing += s;
            }
        }
    }
    rec.N = N;
    rec.sing_count = sing;

    int k = N > 0 ? 0 : -1;
    for (std::uint32_t s = 1; s <= T.n && k == int(s) - 1; ++s) {
        for (const auto& e : T.flats_by_dim[s]) {
            bool zero = true;
            if (T.bits) {
                for (std::uint32_t row = 0; row < e.Ms && zero; ++row)
                    zero = (std::popcount(cm & e.rmask[row]) & 1) == 0;
            } else {
                for (std::uint32_t row = 0; row < e.Ms && zero; ++row) {
                    Fe acc = 0;
                    const Fe* rr = &e.rmat[std::size_t(row) * T.M];
                    for (std::uint32_t m = 0; m < T.M; ++m)
                        if (c[m] && rr[m]) acc = F.add(acc, F.mul(c[m], rr[m]));
                    zero = acc == 0;
                }
            }
            if (zero) {
                k = int(s);
                break;
            }
        }
    }
    rec.k = k;

    rec.is_max = k >= 0 && BigInt(N) == T.theta_k[k];
    if (BigInt(N) > T.theta_k[std::size_t(std::max(k, 0))])
        violations.push_back("coeff_id=" + rec.coeff_id + ": N=" + std::to_string(N) +
                             " exceeds theta at k=" + std::to_string(k));
    if (k == 0 && sing > 0 && BigInt(N) > T.sing_k0)
        violations.push_back("coeff_id=" + rec.coeff_id + ": N=" + std::to_string(N) +
                             " exceeds the singular k=0 bound");

    if (rec.is_max || opt.cross_check) {
        HomogPoly f = from_coeffs(T.nvars, T.d, c);
        if (opt.cross_check && count_points(F, f) != N)
            violations.push_back("coeff_id=" + rec.coeff_id +
                                 ": table count disagrees with the sparse evaluator");
        if (rec.is_max) {
            InvariantReport rep = invariant_report(F, f);
            if (rep.N != N || rep.k != k)
                violations.push_back("coeff_id=" + rec.coeff_id +
                                     ": report disagrees with census tables");
            rec.label = classify_maximizer(F, f, rep);
            if (opt.verify && rec.label == FamilyLabel::UNRECOGNIZED_MAXIMIZER)
                violations.push_back("coeff_id=" + rec.coeff_id +
                                     ": maximizer matches no theorem family");
        }
    }
    return rec;
}

} // namespace

std::uint64_t census_default_budget() {
    if (const char* e = std::getenv("FQHB_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(e, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 10000000ull;
}

std::uint64_t census_class_count(const FieldCtx& F, std::uint32_t d, std::uint32_t n) {
    const auto& basis = monomial_basis(n + 2, d);
    return proj_count(std::int64_t(basis.size()) - 1, F.q());
}

CensusResult census(const FieldCtx& F, std::uint32_t d, std::uint32_t n,
                    const CensusOptions& opt) {
    if (n < 1) throw std::invalid_argument("census: n must be at least 1");
    if (d < 2) throw std::invalid_argument("census: d must be at least 2");
    auto t0 = std::chrono::steady_clock::now();

    CensusResult res;
    res.summary.q = F.q();
    res.summary.d = d;
    res.summary.n = n;
    res.summary.shards = opt.shards ? opt.shards : 1;

    const std::uint64_t total = census_class_count(F, d, n);
    res.summary.class_count = total;
    const std::uint64_t budget = opt.budget ? opt.budget : census_default_budget();

    Tables T = build_tables(F, d, n);

    if (opt.mode == CensusMode::exhaustive) {
        res.summary.mode = "exhaustive";
        if (total > budget)
            throw std::invalid_argument(
                "census: " + std::to_string(total) + " classes exceed the budget of " +
                std::to_string(budget) + " (FQHB_BUDGET raises it)");
        const std::uint32_t W = res.summary.shards;
        std::vector<std::vector<CensusRecord>> recs(W);
        std::vector<std::vector<std::string>> viols(W);
        auto work = [&](std::uint32_t w) {
            std::uint64_t lo = total * w / W;
            std::uint64_t hi = total * (w + 1) / W;
            recs[w].reserve(hi - lo);
            for (std::uint64_t i = lo; i < hi; ++i)
                recs[w].push_back(make_record(T, i, opt, viols[w]));
        };
        if (W == 1) {
            work(0);
        } else {
            std::vector<std::thread> threads;
            for (std::uint32_t w = 0; w < W; ++w) threads.emplace_back(work, w);
            for (auto& th : threads) th.join();
        }
        for (std::uint32_t w = 0; w < W; ++w) {
            res.records.insert(res.records.end(),
                               std::make_move_iterator(recs[w].begin()),
                               std::make_move_iterator(recs[w].end()));
            res.summary.violations.insert(res.summary.violations.end(),
                                          viols[w].begin(), viols[w].end());
        }
    } else {
        res.summary.mode = "random";
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<std::uint64_t> dist(0, total - 1);
        std::vector<std::pair<std::uint64_t, CensusRecord>> sampled;
        sampled.reserve(opt.random_count);
        for (std::uint64_t i = 0; i < opt.random_count; ++i) {
            std::uint64_t idx = dist(rng);
            sampled.emplace_back(idx,
                                 make_record(T, idx, opt, res.summary.violations));
        }
        std::stable_sort(sampled.begin(), sampled.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [idx, rec] : sampled) res.records.push_back(std::move(rec));
    }

    res.summary.total_forms = res.records.size();
    for (const auto& r : res.records) {
        auto it = res.summary.max_N_per_k.find(r.k);
        if (it == res.summary.max_N_per_k.end())
            res.summary.max_N_per_k.emplace(r.k, r.N);
        else if (r.N > it->second)
            it->second = r.N;
        if (r.is_max) ++res.summary.maximizer_counts[family_label_name(r.label)];
    }
    res.summary.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::string census_csv(const std::vector<CensusRecord>& records) {
    std::string out = "q,d,n,coeff_id,N,k,sing_count,is_max,label\n";
    for (const auto& r : records) {
        out += std::to_string(r.q);
        out += ',';
        out += std::to_string(r.d);
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += r.coeff_id;
        out += ',';
        out += std::to_string(r.N);
        out += ',';
        out += std::to_string(r.k);
        out += ',';
        out += std::to_string(r.sing_count);
        out += ',';
        out += r.is_max ? '1' : '0';
        out += ',';
        out += family_label_name(r.label);
        out += '\n';
    }
    return out;
}

std::string census_summary_json(const CensusSummary& s) {
    json j;
    j["q"] = s.q;
    j["d"] = s.d;
    j["n"] = s.n;
    j["mode"] = s.mode;
    j["total_forms"] = s.total_forms;
    j["class_count"] = s.class_count;
    json mk = json::object();
    for (const auto& [k, v] : s.max_N_per_k) mk[std::to_string(k)] = v;
    j["max_N_per_k"] = mk;
    j["maximizer_counts"] = s.maximizer_counts;
    j["violations"] = s.violations;
    j["wall_seconds"] = s.wall_seconds;
    j["shards"] = s.shards;
    return j.dump();
}

std::uint64_t pgl_order(std::uint32_t m, std::uint64_t q) {
    unsigned __int128 ord = 1;
    unsigned __int128 qm = 1;
    for (std::uint32_t i = 0; i < m; ++i) qm *= q;
    unsigned __int128 qi = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        ord *= qm - qi;
        qi *= q;
        if (ord > (unsigned __int128)UINT64_MAX * (q - 1)) return UINT64_MAX;
    }
    ord /= q - 1;
    return ord > UINT64_MAX ? UINT64_MAX : std::uint64_t(ord);
}

namespace {

HomogPoly scale_to_monic(const FieldCtx& F, const HomogPoly& f) {
    Fe lead = f.terms.rbegin()->second;
    if (lead == 1) return f;
    HomogPoly g = f;
    Fe inv = F.inv(lead);
    for (auto& [key, c] : g.terms) c = F.mul(c, inv);
    return g;
}

} // namespace

EquivResult equiv(const FieldCtx& F, const HomogPoly& A, const HomogPoly& B,
                  std::uint64_t budget) {
    if (A.nvars != B.nvars || A.degree != B.degree)
        throw std::invalid_argument("census: equiv needs matching degree and variables");
    if (A.is_zero() || B.is_zero())
        throw std::invalid_argument("census: equiv needs nonzero forms");
    EquivResult out;
    if (count_points(F, A) != count_points(F, B)) {
        out.kind = EquivResult::Kind::inequivalent;
        return out;
    }
    const std::uint32_t m = A.nvars;
    const std::uint64_t q = F.q();
    if (pgl_order(m, q) > budget) {
        out.kind = EquivResult::Kind::budget_exceeded;
        return out;
    }
    HomogPoly target = scale_to_monic(F, B);
    std::uint64_t space = 1;
    for (std::uint32_t i = 0; i < m * m; ++i) space *= q;
    std::vector<Fe> mat(std::size_t(m) * m);
    std::vector<Fe> w(std::size_t(m) * m);
    for (std::uint64_t idx = 0; idx < space; ++idx) {
        std::uint64_t v = idx;
        for (std::uint32_t t = 0; t < m * m; ++t) {
            mat[t] = Fe(v % q);
            v /= q;
        }
        // one representative per scalar class: first nonzero entry is 1
        std::uint32_t t0 = 0;
        while (t0 < m * m && mat[t0] == 0) ++t0;
        if (t0 == m * m || mat[t0] != 1) continue;
        // invertibility by elimination
        w = mat;
        bool ok = true;
        for (std::uint32_t col = 0; col < m && ok; ++col) {
            std::uint32_t piv = col;
            while (piv < m && w[std::size_t(piv) * m + col] == 0) ++piv;
            if (piv == m) {
                ok = false;
                break;
            }
            if (piv != col)
                for (std::uint32_t j = 0; j < m; ++j)
                    std::swap(w[std::size_t(piv) * m + j], w[std::size_t(col) * m + j]);
            Fe inv = F.inv(w[std::size_t(col) * m + col]);
            for (std::uint32_t i = col + 1; i < m; ++i) {
                Fe fct = F.mul(w[std::size_t(i) * m + col], inv);
                if (fct == 0) continue;
                for (std::uint32_t j = col; j < m; ++j)
                    w[std::size_t(i) * m + j] = F.sub(
                        w[std::size_t(i) * m + j], F.mul(fct, w[std::size_t(col) * m + j]));
            }
        }
        if (!ok) continue;
        HomogPoly g = substitute_linear(F, A, mat, m);
        if (g.is_zero()) continue;
        if (scale_to_monic(F, g) == target) {
            out.kind = EquivResult::Kind::equivalent;
            out.matrix = mat;
            return out;
        }
    }
    out.kind = EquivResult::Kind::inequivalent;
    return out;
}

std::set<int> expected_max_ks(std::uint64_t q, std::uint32_t d, std::uint32_t n) {
    std::set<int> ks;
    if (d == 2) {
        ks.insert(int(n)); // hyperplane pairs
        for (std::uint32_t s = 1; 2 * s <= n; ++s)
            ks.insert(int(n - s)); // cones over split quadrics, vertex dim n-1-2s
        if (n <= 2) ks.insert(0);  // conic, elliptic surface
    }
    if (d == q + 1) {
        ks.insert(int(n)); // pencils of hyperplanes
        if (n % 2 == 0) ks.insert(int(n / 2)); // nonsingular space filling
    }
    std::uint64_t root = std::uint64_t(std::sqrt(double(q)));
    while (root * root > q) --root;
    while ((root + 1) * (root + 1) <= q) ++root;
    if (root * root == q && d == root + 1) {
        ks.insert(int(n)); // concurrent hyperplanes exist whenever d <= q+1
        for (std::uint32_t s = 1; 2 * s <= n; ++s)
            ks.insert(int(n - s)); // cones over Hermitian varieties
    }
    return ks;
}

std::vector<GridTuple> default_grid() {
    return {{2, 2, 1}, {2, 2, 2}, {2, 3, 1}, {2, 3, 2}, {3, 2, 1}, {3, 2, 2}};
}

namespace {

void add_clause(VerifyReport& rep, const std::string& name, bool pass,
                const std::string& detail) {
    rep.clauses.push_back({name, pass, detail});
}

// builds every family the theorems provide at (q, d, n) and checks its
// point count (and flat invariant) against the claimed theta value
std::vector<std::pair<std::string, std::string>> construct_failures(
    const FieldCtx& F, std::uint32_t d, std::uint32_t n) {
    std::vector<std::pair<std::string, std::string>> fails;
    const std::uint64_t q = F.q();
    auto check = [&](const std::string& name, const HomogPoly& f, int want_k,
                     BigInt want_N) {
        std::uint64_t N = count_points(F, f);
        if (BigInt(N) != want_N) {
            fails.emplace_back(name, "N=" + std::to_string(N) + " want " +
                                         bigint_to_string(want_N));
            return;
        }
        int k = thas_invariant(F, f).k;
        if (k != want_k)
            fails.emplace_back(name, "k=" + std::to_string(k) + " want " +
                                         std::to_string(want_k));
    };

    if (d == 2) {
        std::vector<std::vector<Fe>> two;
        two.push_back(std::vector<Fe>(n + 2, 0));
        two[0][0] = 1;
        two.push_back(std::vector<Fe>(n + 2, 0));
        two[1][1] = 1;
        check("hyperplane_pair", concurrent_hyperplanes(F, 2, n, two), int(n),
              theta({n, n, 2, q}));
        if (n == 1) check("conic", conic(F), 0, theta({1, 0, 2, q}));
        if (n == 2) {
            Fe alpha = 0;
            bool found = false;
            for (std::uint64_t a = 0; a < q && !found; ++a) {
                try {
                    elliptic_surface(F, Fe(a));
                    alpha = Fe(a);
                    found = true;
                } catch (const std::invalid_argument&) {
                }
            }
            if (!found)
                fails.emplace_back("elliptic_surface", "no valid alpha exists");
            else
                check("elliptic_surface", elliptic_surface(F, alpha), 0,
                      theta({2, 0, 2, q}));
        }
        for (std::uint32_t s = 1; 2 * s <= n; ++s) {
            int h = int(n) - 1 - int(2 * s);
            HomogPoly base = hyperbolic_quadric(F, s);
            HomogPoly f = h < 0 ? base : cone(std::uint32_t(h), base);
            check("hyperbolic_cone_s" + std::to_string(s), f, int(n - s),
                  theta({n, n - s, 2, q}));
        }
    }
    if (d == q + 1) {
        std::vector<std::vector<Fe>> pencil;
        pencil.push_back(std::vector<Fe>(n + 2, 0));
        pencil[0][0] = 1;
        pencil.push_back(std::vector<Fe>(n + 2, 0));
        pencil[1][1] = 1;
        for (std::uint64_t t = 1; t + 2 <= d; ++t) {
            std::vector<Fe> h(n + 2, 0);
            h[0] = 1;
            h[1] = Fe(t);
            pencil.push_back(h);
        }
        check("hyperplane_pencil", concurrent_hyperplanes(F, d, n, pencil), int(n),
              BigInt(proj_count(n + 1, q)));
        std::uint32_t m = n + 2;
        std::vector<Fe> upper(std::size_t(m) * (m - 1) / 2, 0);
        auto upos = [m](std::uint32_t i, std::uint32_t j) {
            std::size_t t = 0;
            for (std::uint32_t r = 0; r < i; ++r) t += m - 1 - r;
            return t + (j - i - 1);
        };
        if (n % 2 == 0) {
            for (std::uint32_t i = 0; i + 1 < m; i += 2) upper[upos(i, i + 1)] = 1;
            check("space_filling", space_filling(F, antisym_from_upper(F, m, upper)),
                  int(n / 2), BigInt(proj_count(n + 1, q)));
        } else {
            upper[upos(0, 1)] = 1;
            check("space_filling_singular",
                  space_filling(F, antisym_from_upper(F, m, upper)), int(n),
                  BigInt(proj_count(n + 1, q)));
        }
    }
    if (F.r() % 2 == 0 && d == F.sqrt_q() + 1) {
        if (n % 2 == 0)
            check("hermitian", hermitian(F, n), int(n / 2),
                  theta({n, n / 2, std::int64_t(d), q}));
        for (std::uint32_t l = 0; l + 3 <= n; ++l) {
            std::uint32_t mb = n - l - 1;
            if (mb % 2 != 0 || mb < 2) continue;
            check("hermitian_cone_l" + std::to_string(l), cone(l, hermitian(F, mb)),
                  int((n + l + 1) / 2), theta({n, (n + l + 1) / 2, std::int64_t(d), q}));
        }
    }
    return fails;
}

} // namespace

VerifyReport verify_theorems(const std::vector<GridTuple>& grid) {
    VerifyReport rep;
    for (const GridTuple& t : grid) {
        FieldCtx F = field_from_spec(std::to_string(t.q));
        std::string tag =
            "q=" + std::to_string(t.q) + ",d=" + std::to_string(t.d) + ",n=" +
            std::to_string(t.n);
        CensusOptions opt;
        opt.verify = true;
        CensusResult res = census(F, t.d, t.n, opt);

        add_clause(rep, "bounds/" + tag, res.summary.violations.empty(),
                   res.summary.violations.empty() ? "" : res.summary.violations.front());

        bool labels_ok = true;
        std::string label_detail;
        bool lemma_ok = true;
        std::string lemma_detail;
        std::set<int> seen;
        for (const auto& r : res.records) {
            if (!r.is_max) continue;
            seen.insert(r.k);
            if (r.label == FamilyLabel::UNRECOGNIZED_MAXIMIZER && labels_ok) {
                labels_ok = false;
                label_detail = "coeff_id=" + r.coeff_id;
            }
            if (r.k >= 1 && lemma_ok) {
                HomogPoly f = from_coeff_id(F, t.n + 2, t.d, r.coeff_id);
                LemmaReport lr = lemma_checks(F, f);
                if (!lr.passed()) {
                    lemma_ok = false;
                    lemma_detail = "coeff_id=" + r.coeff_id;
                }
            }
        }
        add_clause(rep, "labels/" + tag, labels_ok, label_detail);
        add_clause(rep, "lemma/" + tag, lemma_ok, lemma_detail);

        std::set<int> want = expected_max_ks(t.q, t.d, t.n);
        bool cover_ok = true;
        std::string cover_detail;
        for (int k : want)
            if (!seen.count(k)) {
                cover_ok = false;
                cover_detail += "missing k=" + std::to_string(k) + " ";
            }
        add_clause(rep, "coverage/" + tag, cover_ok, cover_detail);

        auto fails = construct_failures(F, t.d, t.n);
        add_clause(rep, "construct/" + tag, fails.empty(),
                   fails.empty() ? "" : fails.front().first + ": " + fails.front().second);

        bool remark_ok = true;
        for (std::uint32_t k = 1; k <= t.n; ++k) {
            bool fills = theta({t.n, k, std::int64_t(t.d), t.q}) ==
                         BigInt(proj_count(t.n + 1, t.q));
            if (fills != (t.d == t.q + 1)) remark_ok = false;
        }
        add_clause(rep, "remark/" + tag, remark_ok, "");
    }
    rep.all_pass = true;
    for (const auto& c : rep.clauses) rep.all_pass &= c.pass;
    return rep;
}

std::string verify_report_json(const VerifyReport& r) {
    json j;
    j["all_pass"] = r.all_pass;
    json arr = json::array();
    for (const auto& c : r.clauses) {
        json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        cj["detail"] = c.detail;
        arr.push_back(cj);
    }
    j["clauses"] = arr;
    return j.dump();
}

} // namespace fqhb
