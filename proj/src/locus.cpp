#include "fqhb/locus.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace fqhb {

bool flat_contained(const FieldCtx& F, const HomogPoly& f, const Flat& L) {
    if (L.dim < 0) throw std::invalid_argument("locus: containment needs dim L >= 0");
    return restrict_to_flat(F, f, L).is_zero();
}

std::vector<ProjPoint> singular_points(const FieldCtx& F, const HomogPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("locus: zero polynomial");
    auto dfs = partials(F, f);
    std::vector<ProjPoint> out;
    std::uint64_t n = proj_count(std::int64_t(f.nvars) - 1, F.q());
    for (std::uint64_t i = 0; i < n; ++i) {
        ProjPoint p = point_at(F, f.nvars - 1, i);
        if (evaluate(F, f, p) != 0) continue;
        bool sing = true;
        for (const auto& df : dfs)
            if (evaluate(F, df, p) != 0) { sing = false; break; }
        if (sing) out.push_back(std::move(p));
    }
    return out;
}

Flat tangent_flat(const FieldCtx& F, const HomogPoly& f, const ProjPoint& p) {
    if (p.c.size() != f.nvars) throw std::invalid_argument("locus: dimension mismatch");
    if (evaluate(F, f, p) != 0) throw std::invalid_argument("locus: point not on X");
    auto dfs = partials(F, f);
    std::vector<Fe> grad(f.nvars);
    bool all_zero = true;
    for (std::uint32_t i = 0; i < f.nvars; ++i) {
        grad[i] = evaluate(F, dfs[i], p);
        all_zero &= grad[i] == 0;
    }
    if (all_zero) throw std::invalid_argument("locus: tangent flat undefined at singular point");
    // kernel of the covector grad: for j != lead, e_j - (grad_j / grad_lead) e_lead
    std::uint32_t lead = 0;
    while (grad[lead] == 0) ++lead;
    Fe inv_l = F.inv(grad[lead]);
    std::vector<ProjPoint> basis;
    for (std::uint32_t j = 0; j < f.nvars; ++j) {
        if (j == lead) continue;
        std::vector<Fe> v(f.nvars, 0);
        v[j] = 1;
        v[lead] = F.neg(F.mul(grad[j], inv_l));
        basis.push_back(normalize_point(F, v));
    }
    return span(F, basis);
}

namespace {

bool covered_by_points(const FieldCtx& F, const Flat& L,
                       const std::unordered_set<std::uint64_t>& on_idx) {
    for (const auto& p : flat_points(F, L))
        if (!on_idx.count(point_index(F, p))) return false;
    return true;
}

} // namespace

ThasResult thas_invariant(const FieldCtx& F, const HomogPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("locus: zero polynomial");
    std::uint32_t nv = f.nvars;
    std::vector<ProjPoint> on;
    std::unordered_set<std::uint64_t> on_idx;
    std::uint64_t total = proj_count(std::int64_t(nv) - 1, F.q());
    for (std::uint64_t i = 0; i < total; ++i) {
        ProjPoint p = point_at(F, nv - 1, i);
        if (evaluate(F, f, p) == 0) {
            on.push_back(std::move(p));
            on_idx.insert(i);
        }
    }
    ThasResult res;
    res.witness = Flat::empty(nv);
    if (on.empty()) return res; // k = -1: no rational point, no rational flat

    const bool fast_coverage = f.degree <= F.q();
    std::set<Flat> level;
    for (const auto& p : on) level.insert(span(F, {p}));
    res.k = 0;

    while (true) {
        std::set<Flat> next;
        std::unordered_set<Flat, FlatHash> visited;
        for (const auto& L : level)
            for (const auto& p : on) {
                if (flat_contains_point(F, L, p)) continue;
                Flat cand = span_with(F, L, p);
                if (!visited.insert(cand).second) continue;
                bool contained = fast_coverage ? covered_by_points(F, cand, on_idx)
                                               : flat_contained(F, f, cand);
                if (contained) next.insert(std::move(cand));
            }
        if (next.empty()) break;
        level = std::move(next);
        ++res.k;
    }

    res.witness = *level.begin();
    res.max_flats.assign(level.begin(), level.end());
    // the coverage shortcut is only valid for d <= q; re-verify symbolically
    for (const auto& L : res.max_flats)
        if (!flat_contained(F, f, L))
            throw std::logic_error("locus: witness fails symbolic containment");
    return res;
}

std::vector<ProjPoint> cone_apexes(const FieldCtx& F, const HomogPoly& f) {
    std::vector<ProjPoint> out;
    for (const auto& p : singular_points(F, f)) {
        // coordinate change: row 0 = p, other rows = unit vectors off the lead
        std::uint32_t lead = 0;
        while (p.c[lead] == 0) ++lead;
        std::vector<Fe> rows;
        rows.insert(rows.end(), p.c.begin(), p.c.end());
        for (std::uint32_t j = 0; j < f.nvars; ++j) {
            if (j == lead) continue;
            std::vector<Fe> e(f.nvars, 0);
            e[j] = 1;
            rows.insert(rows.end(), e.begin(), e.end());
        }
        HomogPoly g = substitute_linear(F, f, rows, f.nvars);
        bool uses_first = false;
        for (const auto& kv : g.terms)
            if ((kv.first >> (8 * (kMaxVars - 1))) & 0xff) { uses_first = true; break; }
        if (!uses_first) out.push_back(p);
    }
    return out;
}

LemmaReport lemma_checks(const FieldCtx& F, const HomogPoly& f) {
    if (f.nvars < 3) throw std::invalid_argument("locus: need n >= 1");
    if (f.degree < 2) throw std::invalid_argument("locus: need d >= 2");
    std::int64_t n = std::int64_t(f.nvars) - 2;
    std::uint64_t N = count_points(F, f);
    ThasResult th = thas_invariant(F, f);
    if (th.k < 1) throw std::invalid_argument("locus: lemma checks need k > 0");
    BigInt bound = theta({n, th.k, std::int64_t(f.degree), F.q()});
    if (BigInt(N) != bound)
        throw std::invalid_argument("locus: lemma checks need a maximizer (N = theta)");

    auto sing = singular_points(F, f);
    std::set<std::vector<Fe>> sing_set;
    for (const auto& s : sing) sing_set.insert(s.c);

    LemmaReport rep;
    std::uint64_t total = proj_count(std::int64_t(f.nvars) - 1, F.q());
    rep.tangent_applicable = th.k <= n - 1;
    for (std::uint64_t i = 0; i < total; ++i) {
        ProjPoint p = point_at(F, f.nvars - 1, i);
        if (evaluate(F, f, p) != 0) continue;
        // (1): p lies on some contained k-flat
        bool on_flat = false;
        for (const auto& L : th.max_flats)
            if (flat_contains_point(F, L, p)) { on_flat = true; break; }
        if (!on_flat) {
            rep.on_flat_ok = false;
            if (!rep.counterexample) rep.counterexample = p;
        }
        if (sing_set.count(p.c)) {
            // (2): a singular rational point lies on every contained k-flat
            for (const auto& L : th.max_flats)
                if (!flat_contains_point(F, L, p)) {
                    rep.sing_on_all_ok = false;
                    if (!rep.counterexample) rep.counterexample = p;
                    break;
                }
        } else if (rep.tangent_applicable) {
            // (4): the tangent section counts Theta_{n-1,k}
            HomogPoly sect = restrict_to_flat(F, f, tangent_flat(F, f, p));
            std::uint64_t cnt = sect.is_zero()
                                    ? proj_count(n, F.q())
                                    : count_points(F, sect);
            if (BigInt(cnt) != theta({n - 1, th.k, std::int64_t(f.degree), F.q()})) {
                rep.tangent_count_ok = false;
                if (!rep.counterexample) rep.counterexample = p;
            }
        }
    }
    return rep;
}

InvariantReport invariant_report(const FieldCtx& F, const HomogPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("locus: zero polynomial");
    if (f.nvars < 3) throw std::invalid_argument("locus: need n >= 1 (at least 3 variables)");
    if (f.degree < 2) throw std::invalid_argument("locus: need degree >= 2");
    InvariantReport rep;
    rep.n = f.nvars - 2;
    rep.d = f.degree;
    rep.q = F.q();
    rep.modulus = F.modulus_csv();
    rep.N = count_points(F, f);
    ThasResult th = thas_invariant(F, f);
    rep.k = th.k;
    rep.witness = th.witness;
    rep.max_flats = std::move(th.max_flats);
    rep.sing_rational = singular_points(F, f);
    rep.apexes = cone_apexes(F, f);
    if (rep.k >= 0) {
        rep.has_theta = true;
        rep.theta_value = theta({std::int64_t(rep.n), rep.k, std::int64_t(rep.d), rep.q});
        if (BigInt(rep.N) > rep.theta_value)
            throw std::logic_error("locus: point count exceeds theta");
        rep.is_maximizer = BigInt(rep.N) == rep.theta_value;
    }
    return rep;
}

std::string invariant_report_json(const InvariantReport& rep) {
    std::string s = "{";
    s += "\"N\":" + std::to_string(rep.N);
    s += ",\"k\":" + std::to_string(rep.k);
    s += ",\"witness\":\"" + flat_to_string(rep.witness) + "\"";
    auto points = [](const std::vector<ProjPoint>& ps) {
        std::string t = "[";
        for (std::size_t i = 0; i < ps.size(); ++i) {
            if (i) t += ',';
            t += "\"" + point_to_csv(ps[i]) + "\"";
        }
        return t + "]";
    };
    s += ",\"sing_rational\":" + points(rep.sing_rational);
    s += ",\"apexes\":" + points(rep.apexes);
    s += ",\"theta\":" + (rep.has_theta ? bigint_to_string(rep.theta_value) : "null");
    s += std::string(",\"is_maximizer\":") + (rep.is_maximizer ? "true" : "false");
    if (rep.k == -1)
        s += ",\"note\":\"k=-1 encodes X(F_q)=empty, extending the P^-1=empty convention\"";
    return s + "}";
}

ExtSingScan singular_scan_ext(const FieldCtx& F, const HomogPoly& f, std::uint32_t m_max) {
    ExtSingScan scan;
    for (std::uint32_t m = 2; m <= m_max; ++m) {
        unsigned __int128 qm = 1;
        for (std::uint32_t i = 0; i < m; ++i) qm *= F.q();
        if (qm > 65536) break;
        if (proj_count128(std::int64_t(f.nvars) - 1, qm) > 2000000) break;
        FieldCtx E(F.p(), F.r() * m);
        // embed F into E: find a root of F's modulus in E, map digit vectors
        Fe root = 0;
        if (F.r() == 1) {
            root = 0; // prime subfield values coincide
        } else {
            bool found = false;
            for (std::uint32_t b = 0; b < E.q() && !found; ++b) {
                Fe acc = 0, pw = 1;
                for (std::uint32_t i = 0; i <= F.r(); ++i) {
                    acc = E.add(acc, E.mul(static_cast<Fe>(F.modulus()[i] % F.p()), pw));
                    pw = E.mul(pw, static_cast<Fe>(b));
                }
                if (acc == 0) { root = static_cast<Fe>(b); found = true; }
            }
            if (!found) throw std::logic_error("locus: no modulus root in extension");
        }
        auto embed = [&](Fe x) -> Fe {
            if (F.r() == 1) return x;
            Fe acc = 0, pw = 1;
            for (std::uint32_t i = 0; i < F.r(); ++i) {
                acc = E.add(acc, E.mul(static_cast<Fe>(F.digit(x, i)), pw));
                pw = E.mul(pw, root);
            }
            return acc;
        };
        HomogPoly g;
        g.nvars = f.nvars;
        g.degree = f.degree;
        for (const auto& [k, c] : f.terms) g.terms.emplace(k, embed(c));
        auto sing = singular_points(E, g);
        scan.m_checked = m;
        // points already rational over the base field are reported by
        // singular_points directly; here only the strictly new ones matter
        for (const auto& s : sing) {
            bool base_rational = true;
            for (Fe c : s.c) {
                bool in_base = false;
                for (std::uint32_t x = 0; x < F.q() && !in_base; ++x)
                    in_base = embed(static_cast<Fe>(x)) == c;
                base_rational &= in_base;
                if (!base_rational) break;
            }
            if (!base_rational) {
                scan.any_singular = true;
                if (!scan.first) scan.first = point_to_csv(s);
                break;
            }
        }
        if (scan.any_singular) break;
    }
    return scan;
}

} // namespace fqhb
