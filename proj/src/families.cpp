#include "fqhb/families.hpp"

#include "fqhb/bounds.hpp"

#include <set>
#include <stdexcept>

namespace fqhb {

namespace {

void add_term(const FieldCtx& F, std::map<std::uint64_t, Fe>& terms, std::uint64_t key,
              Fe c) {
    if (c == 0) return;
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(key, c);
        return;
    }
    it->second = F.add(it->second, c);
    if (it->second == 0) terms.erase(it);
}

HomogPoly mul_linear(const FieldCtx& F, const HomogPoly& f, const std::vector<Fe>& lin) {
    HomogPoly out;
    out.nvars = f.nvars;
    out.degree = f.degree + 1;
    for (const auto& [key, c] : f.terms)
        for (std::uint32_t j = 0; j < f.nvars; ++j) {
            if (lin[j] == 0) continue;
            auto e = unpack_exponents(key, f.nvars);
            ++e[j];
            add_term(F, out.terms, pack_exponents(e), F.mul(c, lin[j]));
        }
    return out;
}

std::uint64_t u64_pow(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    for (; e; --e) r *= b;
    return r;
}

} // namespace

AntisymMatrix antisym_from_upper(const FieldCtx& F, std::uint32_t m,
                                 const std::vector<Fe>& upper) {
    if (m < 2) throw std::invalid_argument("families: matrix size must be at least 2");
    if (upper.size() != std::size_t(m) * (m - 1) / 2)
        throw std::invalid_argument("families: wrong number of upper-triangle entries");
    AntisymMatrix A;
    A.m = m;
    A.a.assign(std::size_t(m) * m, 0);
    std::size_t t = 0;
    for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t j = i + 1; j < m; ++j) {
            Fe v = upper[t++];
            if (v >= F.q()) throw std::invalid_argument("families: matrix entry out of range");
            A.a[std::size_t(i) * m + j] = v;
            A.a[std::size_t(j) * m + i] = F.neg(v);
        }
    return A;
}

void validate_antisym(const FieldCtx& F, const AntisymMatrix& A) {
    if (A.m < 2 || A.a.size() != std::size_t(A.m) * A.m)
        throw std::invalid_argument("families: malformed matrix");
    for (std::uint32_t i = 0; i < A.m; ++i) {
        if (A.at(i, i) != 0)
            throw std::invalid_argument("families: matrix diagonal must be zero");
        for (std::uint32_t j = 0; j < A.m; ++j) {
            if (A.at(i, j) >= F.q())
                throw std::invalid_argument("families: matrix entry out of range");
            if (A.at(i, j) != F.neg(A.at(j, i)))
                throw std::invalid_argument("families: matrix is not antisymmetric");
        }
    }
}

Fe matrix_det(const FieldCtx& F, const AntisymMatrix& A) {
    const std::uint32_t m = A.m;
    std::vector<Fe> w = A.a;
    Fe det = 1;
    for (std::uint32_t col = 0; col < m; ++col) {
        std::uint32_t piv = col;
        while (piv < m && w[std::size_t(piv) * m + col] == 0) ++piv;
        if (piv == m) return 0;
        if (piv != col) {
            for (std::uint32_t j = 0; j < m; ++j)
                std::swap(w[std::size_t(piv) * m + j], w[std::size_t(col) * m + j]);
            det = F.neg(det);
        }
        Fe lead = w[std::size_t(col) * m + col];
        det = F.mul(det, lead);
        Fe linv = F.inv(lead);
        for (std::uint32_t i = col + 1; i < m; ++i) {
            Fe fct = F.mul(w[std::size_t(i) * m + col], linv);
            if (fct == 0) continue;
            for (std::uint32_t j = col; j < m; ++j)
                w[std::size_t(i) * m + j] =
                    F.sub(w[std::size_t(i) * m + j], F.mul(fct, w[std::size_t(col) * m + j]));
        }
    }
    return det;
}

std::string family_label_name(FamilyLabel label) {
    switch (label) {
        case FamilyLabel::HYPERPLANES_I: return "HYPERPLANES_I";
        case FamilyLabel::SPACE_FILLING_II1: return "SPACE_FILLING_II1";
        case FamilyLabel::HERMITIAN_II2a: return "HERMITIAN_II2a";
        case FamilyLabel::HERMITIAN_CONE_II2: return "HERMITIAN_CONE_II2";
        case FamilyLabel::HYPERBOLIC_CONE_II3: return "HYPERBOLIC_CONE_II3";
        case FamilyLabel::CONIC_T2: return "CONIC_T2";
        case FamilyLabel::ELLIPTIC_T2: return "ELLIPTIC_T2";
        case FamilyLabel::NON_MAXIMIZER: return "NON_MAXIMIZER";
        case FamilyLabel::UNRECOGNIZED_MAXIMIZER: return "UNRECOGNIZED_MAXIMIZER";
    }
    throw std::logic_error("families: unknown label");
}

HomogPoly concurrent_hyperplanes(const FieldCtx& F, std::uint32_t d, std::uint32_t n,
                                 const std::vector<std::vector<Fe>>& hyperplanes) {
    if (d == 0) throw std::invalid_argument("families: need at least one hyperplane");
    if (hyperplanes.size() != d)
        throw std::invalid_argument("families: expected exactly d hyperplanes");
    std::vector<ProjPoint> coeffs;
    std::set<ProjPoint> distinct;
    for (const auto& h : hyperplanes) {
        if (h.size() != std::size_t(n) + 2)
            throw std::invalid_argument("families: hyperplane has wrong length");
        ProjPoint pt = normalize_point(F, h); // rejects the zero form
        if (!distinct.insert(pt).second)
            throw std::invalid_argument("families: hyperplanes must be pairwise independent");
        coeffs.push_back(std::move(pt));
    }
    if (d >= 3 && span(F, coeffs).dim + 1 > 2)
        throw std::invalid_argument("families: hyperplanes lack a common codimension-2 flat");
    HomogPoly out;
    out.nvars = n + 2;
    out.degree = 0;
    out.terms.emplace(0, Fe(1));
    for (const auto& h : hyperplanes) out = mul_linear(F, out, h);
    return out;
}

HomogPoly space_filling(const FieldCtx& F, const AntisymMatrix& A) {
    validate_antisym(F, A);
    bool zero = true;
    for (Fe v : A.a) zero &= v == 0;
    if (zero) throw std::invalid_argument("families: zero matrix gives the zero form");
    const std::uint32_t q = std::uint32_t(F.q());
    HomogPoly out;
    out.nvars = A.m;
    out.degree = q + 1;
    for (std::uint32_t i = 0; i < A.m; ++i)
        for (std::uint32_t j = 0; j < A.m; ++j) {
            if (i == j || A.at(i, j) == 0) continue;
            std::vector<std::uint32_t> e(A.m, 0);
            e[i] += 1;
            e[j] += q;
            add_term(F, out.terms, pack_exponents(e), A.at(i, j));
        }
    return out;
}

HomogPoly hermitian(const FieldCtx& F, std::uint32_t m) {
    if (F.r() % 2 != 0) throw std::invalid_argument("families: q must be a square");
    if (m < 1) throw std::invalid_argument("families: dimension must be at least 1");
    const std::uint32_t e0 = std::uint32_t(F.sqrt_q()) + 1;
    HomogPoly out;
    out.nvars = m + 2;
    out.degree = e0;
    for (std::uint32_t i = 0; i < m + 2; ++i) {
        std::vector<std::uint32_t> e(m + 2, 0);
        e[i] = e0;
        out.terms.emplace(pack_exponents(e), Fe(1));
    }
    return out;
}

HomogPoly cone(std::uint32_t l, const HomogPoly& base) {
    if (base.is_zero()) throw std::invalid_argument("families: cone base is zero");
    if (base.nvars + l + 1 > kMaxVars)
        throw std::invalid_argument("families: cone exceeds the variable limit");
    HomogPoly out = base;
    out.nvars = base.nvars + l + 1;
    return out;
}

HomogPoly hyperbolic_quadric(const FieldCtx& F, std::uint32_t s) {
    (void)F;
    if (s < 1) throw std::invalid_argument("families: s must be at least 1");
    if (2 * s + 2 > kMaxVars)
        throw std::invalid_argument("families: quadric exceeds the variable limit");
    HomogPoly out;
    out.nvars = 2 * s + 2;
    out.degree = 2;
    for (std::uint32_t i = 0; i <= s; ++i) {
        std::vector<std::uint32_t> e(out.nvars, 0);
        e[2 * i] = 1;
        e[2 * i + 1] = 1;
        out.terms.emplace(pack_exponents(e), Fe(1));
    }
    return out;
}

HomogPoly elliptic_surface(const FieldCtx& F, Fe alpha) {
    bool ok;
    if (F.p() == 2) {
        ok = F.abs_trace(alpha) == 1;
    } else {
        Fe four = Fe(4 % F.p());
        ok = !F.is_square(F.sub(1, F.mul(four, alpha)));
    }
    if (!ok)
        throw std::invalid_argument(
            "families: alpha does not make X0^2 term's binary quadratic irreducible");
    HomogPoly out;
    out.nvars = 4;
    out.degree = 2;
    add_term(F, out.terms, pack_exponents({2, 0, 0, 0}), alpha);
    add_term(F, out.terms, pack_exponents({1, 1, 0, 0}), 1);
    add_term(F, out.terms, pack_exponents({0, 2, 0, 0}), 1);
    add_term(F, out.terms, pack_exponents({0, 0, 1, 1}), 1);
    return out;
}

HomogPoly conic(const FieldCtx& F) {
    return F.p() == 2 ? parse_form(F, "X0^2+X1*X2", 3) : parse_form(F, "X0^2+X1^2+X2^2", 3);
}

std::optional<HomogPoly> divide_by_linear(const FieldCtx& F, const HomogPoly& f,
                                          const std::vector<Fe>& lin) {
    if (lin.size() != f.nvars)
        throw std::invalid_argument("families: linear form has wrong length");
    if (f.is_zero() || f.degree == 0)
        throw std::invalid_argument("families: dividend must have positive degree");
    std::uint32_t v = 0;
    while (v < lin.size() && lin[v] == 0) ++v;
    if (v == lin.size()) throw std::invalid_argument("families: zero linear form");
    Fe scale = F.inv(lin[v]);
    std::vector<Fe> l(f.nvars);
    for (std::uint32_t j = 0; j < f.nvars; ++j) l[j] = F.mul(lin[j], scale);
    const std::uint32_t shift_v = 8 * (kMaxVars - 1 - v);

    std::map<std::uint64_t, Fe> rem = f.terms;
    HomogPoly quo;
    quo.nvars = f.nvars;
    quo.degree = f.degree - 1;
    while (true) {
        // peel the remaining term with the highest X_v exponent
        std::uint64_t bkey = 0;
        Fe bc = 0;
        std::uint32_t be = 0;
        for (const auto& [key, c] : rem) {
            std::uint32_t e = (key >> shift_v) & 0xff;
            if (e >= 1 && (be == 0 || e > be || (e == be && key > bkey))) {
                be = e;
                bkey = key;
                bc = c;
            }
        }
        if (be == 0) break;
        std::uint64_t qkey = bkey - (std::uint64_t(1) << shift_v);
        add_term(F, quo.terms, qkey, bc);
        for (std::uint32_t j = 0; j < f.nvars; ++j) {
            if (l[j] == 0) continue;
            auto e = unpack_exponents(qkey, f.nvars);
            ++e[j];
            add_term(F, rem, pack_exponents(e), F.neg(F.mul(bc, l[j])));
        }
    }
    if (!rem.empty()) return std::nullopt;
    return quo;
}

namespace {

// the quotient after peeling every rational linear factor, or nullopt if f
// is not a product of rational linear forms
std::optional<std::vector<std::vector<Fe>>> split_linear(const FieldCtx& F, HomogPoly g) {
    std::vector<std::vector<Fe>> out;
    const std::uint32_t nv = g.nvars;
    const std::uint64_t ncand = proj_count(std::int64_t(nv) - 1, F.q());
    while (g.degree > 0) {
        bool found = false;
        for (std::uint64_t i = 0; i < ncand && !found; ++i) {
            ProjPoint cand = point_at(F, nv - 1, i);
            if (auto quo = divide_by_linear(F, g, cand.c)) {
                out.push_back(cand.c);
                g = std::move(*quo);
                found = true;
            }
        }
        if (!found) return std::nullopt;
    }
    return out;
}

// the flat filled exactly by the given points, if they do form one
std::optional<Flat> apex_flat(const FieldCtx& F, const std::vector<ProjPoint>& apexes) {
    Flat V = span(F, apexes);
    if (std::uint64_t(apexes.size()) != proj_count(V.dim, F.q())) return std::nullopt;
    return V;
}

// restriction of f to the coordinate flat complementary to V
HomogPoly complement_restrict(const FieldCtx& F, const HomogPoly& f, const Flat& V) {
    std::vector<bool> pivot(f.nvars, false);
    for (std::uint32_t i = 0; i < V.nrows(); ++i) {
        const Fe* r = V.row(i);
        std::uint32_t j = 0;
        while (j < V.ncols && r[j] == 0) ++j;
        pivot[j] = true;
    }
    Flat W;
    W.ncols = f.nvars;
    std::uint32_t cnt = 0;
    for (std::uint32_t j = 0; j < f.nvars; ++j) {
        if (pivot[j]) continue;
        std::vector<Fe> e(f.nvars, 0);
        e[j] = 1;
        W.a.insert(W.a.end(), e.begin(), e.end());
        ++cnt;
    }
    W.dim = int(cnt) - 1;
    return restrict_to_flat(F, f, W);
}

// nonsingular Hermitian signature: even dimension mb, the right point
// count, and flats of dimension exactly mb/2
bool hermitian_signature(const FieldCtx& F, const HomogPoly& base) {
    if (base.is_zero() || base.nvars < 4) return false;
    const std::uint32_t mb = base.nvars - 2;
    if (mb % 2 != 0) return false;
    if (!singular_points(F, base).empty()) return false;
    BoundSpec spec{mb, mb / 2, std::int64_t(base.degree), F.q()};
    if (BigInt(count_points(F, base)) != theta(spec)) return false;
    return thas_invariant(F, base).k == int(mb / 2);
}

} // namespace

FamilyLabel classify_maximizer(const FieldCtx& F, const HomogPoly& f,
                               const InvariantReport& rep) {
    if (!rep.is_maximizer) return FamilyLabel::NON_MAXIMIZER;
    const std::uint32_t n = rep.n;
    const std::uint32_t d = rep.d;
    const std::uint64_t q = F.q();

    if (rep.k == int(n)) {
        if (auto factors = split_linear(F, f)) {
            std::vector<ProjPoint> pts;
            for (const auto& c : *factors) pts.push_back(normalize_point(F, c));
            if (span(F, pts).dim + 1 <= 2) return FamilyLabel::HYPERPLANES_I;
        }
    }

    if (d == q + 1 && rep.N == proj_count(n + 1, q)) return FamilyLabel::SPACE_FILLING_II1;

    if (F.r() % 2 == 0 && d == F.sqrt_q() + 1) {
        if (rep.apexes.empty() && n % 2 == 0 && rep.k == int(n / 2))
            return FamilyLabel::HERMITIAN_II2a;
        if (!rep.apexes.empty()) {
            if (auto V = apex_flat(F, rep.apexes)) {
                HomogPoly base = complement_restrict(F, f, *V);
                if (!base.is_zero() && hermitian_signature(F, base))
                    return FamilyLabel::HERMITIAN_CONE_II2;
            }
        }
    }

    if (d == 2) {
        bool apexes_ok = true;
        int h = -1;
        std::optional<Flat> V;
        if (!rep.apexes.empty()) {
            V = apex_flat(F, rep.apexes);
            apexes_ok = V.has_value();
            if (V) h = V->dim;
        }
        const int twos = int(n) - h - 1;
        if (apexes_ok && twos >= 2 && twos % 2 == 0 && rep.k == (int(n) + h + 1) / 2) {
            const std::uint32_t s = std::uint32_t(twos) / 2;
            HomogPoly base = V ? complement_restrict(F, f, *V) : f;
            if (!base.is_zero() &&
                count_points(F, base) == (u64_pow(q, s) + 1) * proj_count(s, q))
                return FamilyLabel::HYPERBOLIC_CONE_II3;
        }
    }

    if (rep.k == 0 && d == 2 && n == 1) return FamilyLabel::CONIC_T2;
    if (rep.k == 0 && d == 2 && n == 2) return FamilyLabel::ELLIPTIC_T2;
    return FamilyLabel::UNRECOGNIZED_MAXIMIZER;
}

} // namespace fqhb
