#include "fqhb/projgeom.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace fqhb {

std::uint64_t proj_count(std::int64_t N, std::uint64_t q) {
    unsigned __int128 v = proj_count128(N, q);
    if (v > std::numeric_limits<std::uint64_t>::max())
        throw std::overflow_error("proj_count: exceeds 64 bits");
    return static_cast<std::uint64_t>(v);
}

unsigned __int128 proj_count128(std::int64_t N, unsigned __int128 q) {
    if (N < -1) throw std::invalid_argument("proj_count: N < -1");
    unsigned __int128 acc = 0;
    for (std::int64_t i = 0; i <= N; ++i) acc = acc * q + 1;
    return acc;
}

std::uint64_t gaussian_binomial(std::uint32_t m, std::uint32_t j, std::uint64_t q) {
    if (j > m) throw std::invalid_argument("gaussian_binomial: j > m");
    // q-Pascal recurrence G(m,j) = G(m-1,j-1) + q^j G(m-1,j).
    std::vector<unsigned __int128> row(j + 1, 0);
    row[0] = 1;
    for (std::uint32_t mm = 1; mm <= m; ++mm) {
        for (std::uint32_t jj = std::min(mm, j); jj >= 1; --jj) {
            unsigned __int128 qe = 1;
            for (std::uint32_t t = 0; t < jj; ++t) qe *= q;
            row[jj] = row[jj - 1] + qe * row[jj];
        }
    }
    if (row[j] > std::numeric_limits<std::uint64_t>::max())
        throw std::overflow_error("gaussian_binomial: exceeds 64 bits");
    return static_cast<std::uint64_t>(row[j]);
}

ProjPoint normalize_point(const FieldCtx& F, const std::vector<Fe>& v) {
    std::size_t lead = v.size();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) { lead = i; break; }
    if (lead == v.size()) throw std::invalid_argument("normalize_point: zero vector");
    ProjPoint p{v};
    if (v[lead] != 1) {
        Fe s = F.inv(v[lead]);
        for (auto& x : p.c) x = F.mul(x, s);
    }
    return p;
}

ProjPoint point_at(const FieldCtx& F, std::uint32_t N, std::uint64_t idx) {
    std::uint64_t total = proj_count(N, F.q());
    if (idx >= total) throw std::invalid_argument("point_at: index out of range");
    ProjPoint p;
    p.c.assign(N + 1, 0);
    std::uint32_t pos = 0;
    // Leading zeros first: indices below proj_count(N-1) live in the
    // coordinate hyperplane X_pos = 0.
    while (true) {
        std::uint64_t sub = proj_count(std::int64_t(N) - pos - 1, F.q());
        if (idx < sub) {
            ++pos; // p.c[pos-1] stays 0
        } else {
            idx -= sub;
            break;
        }
    }
    p.c[pos] = 1;
    // Remaining coordinates are the base-q digits of idx, most significant
    // first, which is exactly lexicographic order.
    for (std::uint32_t i = N; i > pos; --i) {
        p.c[i] = static_cast<Fe>(idx % F.q());
        idx /= F.q();
    }
    return p;
}

std::uint64_t point_index(const FieldCtx& F, const ProjPoint& pt) {
    std::uint32_t N = static_cast<std::uint32_t>(pt.c.size() - 1);
    std::uint32_t pos = 0;
    while (pt.c[pos] == 0) ++pos;
    std::uint64_t tail = 0;
    for (std::uint32_t i = pos + 1; i <= N; ++i) tail = tail * F.q() + pt.c[i];
    // Points with an extra leading zero occupy the first proj_count(N-pos-1)
    // indices of the subproblem at position pos.
    return proj_count(std::int64_t(N) - pos - 1, F.q()) + tail;
}

std::vector<ProjPoint> all_points(const FieldCtx& F, std::uint32_t N) {
    std::uint64_t n = proj_count(N, F.q());
    std::vector<ProjPoint> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(point_at(F, N, i));
    return out;
}

namespace {

// In-place reduction of a row-major matrix to RREF; returns the rank.
std::uint32_t rref(const FieldCtx& F, std::vector<Fe>& a, std::uint32_t rows,
                   std::uint32_t cols) {
    std::uint32_t r = 0;
    for (std::uint32_t col = 0; col < cols && r < rows; ++col) {
        std::uint32_t piv = rows;
        for (std::uint32_t i = r; i < rows; ++i)
            if (a[std::size_t(i) * cols + col] != 0) { piv = i; break; }
        if (piv == rows) continue;
        if (piv != r)
            for (std::uint32_t j = 0; j < cols; ++j)
                std::swap(a[std::size_t(piv) * cols + j], a[std::size_t(r) * cols + j]);
        Fe s = F.inv(a[std::size_t(r) * cols + col]);
        if (s != 1)
            for (std::uint32_t j = col; j < cols; ++j) {
                auto& t = a[std::size_t(r) * cols + j];
                t = F.mul(t, s);
            }
        for (std::uint32_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            Fe f = a[std::size_t(i) * cols + col];
            if (f == 0) continue;
            for (std::uint32_t j = col; j < cols; ++j) {
                auto& t = a[std::size_t(i) * cols + j];
                t = F.sub(t, F.mul(f, a[std::size_t(r) * cols + j]));
            }
        }
        ++r;
    }
    return r;
}

Flat flat_from_rows(const FieldCtx& F, std::vector<Fe> a, std::uint32_t rows,
                    std::uint32_t cols) {
    std::uint32_t rank = rref(F, a, rows, cols);
    a.resize(std::size_t(rank) * cols);
    return Flat{int(rank) - 1, cols, std::move(a)};
}

} // namespace

Flat span(const FieldCtx& F, const std::vector<ProjPoint>& pts) {
    if (pts.empty()) throw std::invalid_argument("span: empty point list");
    std::uint32_t cols = static_cast<std::uint32_t>(pts[0].c.size());
    std::vector<Fe> a;
    a.reserve(pts.size() * cols);
    for (const auto& p : pts) {
        if (p.c.size() != cols) throw std::invalid_argument("span: mixed dimensions");
        a.insert(a.end(), p.c.begin(), p.c.end());
    }
    return flat_from_rows(F, std::move(a), static_cast<std::uint32_t>(pts.size()), cols);
}

Flat span_with(const FieldCtx& F, const Flat& L, const ProjPoint& p) {
    if (p.c.size() != L.ncols && L.dim >= 0)
        throw std::invalid_argument("span_with: mixed dimensions");
    std::vector<Fe> a = L.a;
    a.insert(a.end(), p.c.begin(), p.c.end());
    return flat_from_rows(F, std::move(a), L.nrows() + 1,
                          static_cast<std::uint32_t>(p.c.size()));
}

bool flat_contains_point(const FieldCtx& F, const Flat& L, const ProjPoint& p) {
    if (L.dim < 0) return false;
    // Reduce p against the RREF rows; membership iff the residue is zero.
    std::vector<Fe> v = p.c;
    for (std::uint32_t i = 0; i < L.nrows(); ++i) {
        const Fe* row = L.row(i);
        std::uint32_t piv = 0;
        while (row[piv] == 0) ++piv;
        Fe f = v[piv];
        if (f == 0) continue;
        for (std::uint32_t j = piv; j < L.ncols; ++j) v[j] = F.sub(v[j], F.mul(f, row[j]));
    }
    return std::all_of(v.begin(), v.end(), [](Fe x) { return x == 0; });
}

std::vector<ProjPoint> flat_points(const FieldCtx& F, const Flat& L) {
    std::vector<ProjPoint> out;
    if (L.dim < 0) return out;
    std::uint32_t k = static_cast<std::uint32_t>(L.dim);
    std::uint64_t n = proj_count(k, F.q());
    out.reserve(n);
    for (std::uint64_t t = 0; t < n; ++t) {
        ProjPoint lam = point_at(F, k, t);
        // Combinations of RREF rows with normalized coefficients are already
        // normalized (the leading coefficient lands on a pivot column).
        ProjPoint p;
        p.c.assign(L.ncols, 0);
        for (std::uint32_t i = 0; i <= k; ++i) {
            if (lam.c[i] == 0) continue;
            const Fe* row = L.row(i);
            for (std::uint32_t j = 0; j < L.ncols; ++j)
                p.c[j] = F.add(p.c[j], F.mul(lam.c[i], row[j]));
        }
        out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Flat> enumerate_flats(const FieldCtx& F, std::uint32_t N, std::uint32_t k) {
    if (k > N) throw std::invalid_argument("enumerate_flats: k > N");
    std::uint32_t cols = N + 1, rows = k + 1;
    std::vector<Flat> out;
    // Choose pivot columns c_0 < ... < c_k, then fill every non-pivot cell to
    // the right of its row's pivot in all q ways; each RREF matrix arises
    // exactly once.
    std::vector<std::uint32_t> piv(rows);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> free_cells;
    auto emit = [&]() {
        free_cells.clear();
        std::vector<bool> is_piv(cols, false);
        for (auto c : piv) is_piv[c] = true;
        for (std::uint32_t i = 0; i < rows; ++i)
            for (std::uint32_t j = piv[i] + 1; j < cols; ++j)
                if (!is_piv[j]) free_cells.push_back({i, j});
        std::vector<Fe> base(std::size_t(rows) * cols, 0);
        for (std::uint32_t i = 0; i < rows; ++i) base[std::size_t(i) * cols + piv[i]] = 1;
        std::vector<std::uint32_t> ctr(free_cells.size(), 0);
        while (true) {
            std::vector<Fe> a = base;
            for (std::size_t t = 0; t < free_cells.size(); ++t)
                a[std::size_t(free_cells[t].first) * cols + free_cells[t].second] =
                    static_cast<Fe>(ctr[t]);
            out.push_back(Flat{int(k), cols, std::move(a)});
            std::size_t t = 0;
            for (; t < ctr.size(); ++t) {
                if (++ctr[t] < F.q()) break;
                ctr[t] = 0;
            }
            if (t == ctr.size()) break;
        }
    };
    // iterate pivot combinations
    for (std::uint32_t i = 0; i < rows; ++i) piv[i] = i;
    while (true) {
        emit();
        std::int64_t i = rows - 1;
        while (i >= 0 && piv[i] == cols - rows + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (std::uint32_t j = i + 1; j < rows; ++j) piv[j] = piv[j - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Flat> flats_through(const FieldCtx& F, const Flat& L, std::uint32_t N) {
    if (L.dim >= int(N)) throw std::invalid_argument("flats_through: dim L must be < N");
    std::set<Flat> out;
    std::uint64_t n = proj_count(N, F.q());
    for (std::uint64_t i = 0; i < n; ++i) {
        ProjPoint p = point_at(F, N, i);
        if (L.dim >= 0 && flat_contains_point(F, L, p)) continue;
        Flat e = L.dim >= 0 ? span_with(F, L, p) : span(F, {p});
        out.insert(std::move(e));
    }
    return {out.begin(), out.end()};
}

std::string flat_to_string(const Flat& L) {
    if (L.dim < 0) return "-";
    std::string s;
    for (std::uint32_t i = 0; i < L.nrows(); ++i) {
        if (i) s += ';';
        for (std::uint32_t j = 0; j < L.ncols; ++j) {
            if (j) s += ',';
            s += std::to_string(L.row(i)[j]);
        }
    }
    return s;
}

Flat flat_from_string(const FieldCtx& F, const std::string& s, std::uint32_t ncols) {
    if (s == "-" || s.empty()) return Flat::empty(ncols);
    std::vector<Fe> a;
    std::uint32_t rows = 0;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t end = s.find(';', pos);
        if (end == std::string::npos) end = s.size();
        std::string rowstr = s.substr(pos, end - pos);
        std::uint32_t count = 0;
        std::size_t rp = 0;
        while (rp <= rowstr.size()) {
            std::size_t re = rowstr.find(',', rp);
            if (re == std::string::npos) re = rowstr.size();
            std::string tok = rowstr.substr(rp, re - rp);
            if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
                throw std::invalid_argument("flat_from_string: bad coordinate '" + tok + "'");
            std::uint64_t v = std::stoull(tok);
            if (v >= F.q())
                throw std::invalid_argument("flat_from_string: coordinate out of range");
            a.push_back(static_cast<Fe>(v));
            ++count;
            rp = re + 1;
            if (re == rowstr.size()) break;
        }
        if (count != ncols)
            throw std::invalid_argument("flat_from_string: row length mismatch");
        ++rows;
        pos = end + 1;
        if (end == s.size()) break;
    }
    Flat f = flat_from_rows(F, std::move(a), rows, ncols);
    if (f.nrows() != rows)
        throw std::invalid_argument("flat_from_string: rows are linearly dependent");
    return f;
}

std::string point_to_string(const ProjPoint& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.c.size(); ++i) {
        if (i) s += ':';
        s += std::to_string(p.c[i]);
    }
    return s + ")";
}

std::string point_to_csv(const ProjPoint& p) {
    std::string s;
    for (std::size_t i = 0; i < p.c.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(p.c[i]);
    }
    return s;
}

} // namespace fqhb
