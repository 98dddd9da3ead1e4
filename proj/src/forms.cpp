#include "fqhb/forms.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <mutex>
#include <stdexcept>

namespace fqhb {

std::uint64_t pack_exponents(const std::vector<std::uint32_t>& e) {
    if (e.size() > kMaxVars) throw std::invalid_argument("forms: more than 8 variables");
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] > 255) throw std::invalid_argument("forms: exponent exceeds 255");
        key |= std::uint64_t(e[i]) << (8 * (kMaxVars - 1 - i));
    }
    return key;
}

std::vector<std::uint32_t> unpack_exponents(std::uint64_t key, std::uint32_t nvars) {
    std::vector<std::uint32_t> e(nvars);
    for (std::uint32_t i = 0; i < nvars; ++i)
        e[i] = (key >> (8 * (kMaxVars - 1 - i))) & 0xff;
    return e;
}

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

std::uint32_t key_degree(std::uint64_t key) {
    std::uint32_t d = 0;
    for (std::uint32_t i = 0; i < kMaxVars; ++i) d += (key >> (8 * i)) & 0xff;
    return d;
}

} // namespace

HomogPoly parse_form(const FieldCtx& F, const std::string& text, std::uint32_t nvars) {
    if (nvars == 0 || nvars > kMaxVars)
        throw std::invalid_argument("forms: nvars must be in 1..8");
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("forms: empty input");

    HomogPoly out;
    out.nvars = nvars;
    bool degree_set = false;

    std::size_t pos = 0;
    auto parse_uint = [&](const char* what) -> std::uint64_t {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start)
            throw std::invalid_argument(std::string("forms: expected ") + what +
                                        " at '" + s.substr(start) + "'");
        return std::stoull(s.substr(start, pos - start));
    };

    while (true) {
        // one term: product of coefficient atoms and variable factors
        Fe coeff = 1;
        std::vector<std::uint32_t> expo(nvars, 0);
        bool first_factor = true;
        while (true) {
            if (!first_factor) {
                if (pos < s.size() && s[pos] == '*') ++pos;
                else break;
            }
            first_factor = false;
            if (pos >= s.size())
                throw std::invalid_argument("forms: dangling '*'");
            char ch = s[pos];
            if (ch == 'X' || ch == 'x') {
                ++pos;
                std::uint64_t vi = parse_uint("variable index");
                if (vi >= nvars)
                    throw std::invalid_argument("forms: variable X" + std::to_string(vi) +
                                                " out of range");
                std::uint64_t e = 1;
                if (pos < s.size() && s[pos] == '^') {
                    ++pos;
                    e = parse_uint("exponent");
                }
                expo[vi] += static_cast<std::uint32_t>(e);
            } else if (ch == 'g') {
                ++pos;
                std::uint64_t k = 1;
                if (pos < s.size() && s[pos] == '^') {
                    ++pos;
                    k = parse_uint("generator exponent");
                }
                coeff = F.mul(coeff, F.pow(F.generator(), k));
            } else if (std::isdigit(static_cast<unsigned char>(ch))) {
                std::uint64_t c = parse_uint("coefficient");
                coeff = F.mul(coeff, static_cast<Fe>(c % F.p()));
            } else {
                throw std::invalid_argument("forms: unexpected character '" +
                                            std::string(1, ch) + "'");
            }
        }
        std::uint32_t deg = 0;
        for (auto e : expo) deg += e;
        if (!degree_set) {
            out.degree = deg;
            degree_set = true;
        } else if (deg != out.degree) {
            throw std::invalid_argument("forms: not homogeneous (degree " +
                                        std::to_string(deg) + " vs " +
                                        std::to_string(out.degree) + ")");
        }
        add_term(F, out.terms, pack_exponents(expo), coeff);
        if (pos >= s.size()) break;
        if (s[pos] != '+')
            throw std::invalid_argument("forms: expected '+' at '" + s.substr(pos) + "'");
        ++pos;
    }
    if (out.terms.empty()) throw std::invalid_argument("forms: form is zero");
    return out;
}

std::string print_form(const FieldCtx& F, const HomogPoly& f) {
    if (f.terms.empty()) return "0";
    std::string s;
    for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
        if (!s.empty()) s += '+';
        auto e = unpack_exponents(it->first, f.nvars);
        std::string mono;
        for (std::uint32_t i = 0; i < f.nvars; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += "X" + std::to_string(i);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            s += F.to_string(it->second); // degree-0 term
        } else if (it->second == 1) {
            s += mono;
        } else {
            s += F.to_string(it->second) + "*" + mono;
        }
    }
    return s;
}

Fe evaluate_raw(const FieldCtx& F, const HomogPoly& f, const std::vector<Fe>& v) {
    if (v.size() != f.nvars) throw std::invalid_argument("forms: dimension mismatch");
    Fe acc = 0;
    for (const auto& [key, c] : f.terms) {
        Fe t = c;
        for (std::uint32_t i = 0; i < f.nvars && t != 0; ++i) {
            std::uint32_t e = (key >> (8 * (kMaxVars - 1 - i))) & 0xff;
            if (e) t = F.mul(t, F.pow(v[i], e));
        }
        acc = F.add(acc, t);
    }
    return acc;
}

Fe evaluate(const FieldCtx& F, const HomogPoly& f, const ProjPoint& p) {
    return evaluate_raw(F, f, p.c);
}

std::uint64_t count_points(const FieldCtx& F, const HomogPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("forms: zero polynomial has no hypersurface");
    std::uint64_t n = proj_count(std::int64_t(f.nvars) - 1, F.q());
    std::uint64_t cnt = 0;
    for (std::uint64_t i = 0; i < n; ++i)
        if (evaluate(F, f, point_at(F, f.nvars - 1, i)) == 0) ++cnt;
    return cnt;
}

HomogPoly substitute_linear(const FieldCtx& F, const HomogPoly& f,
                            const std::vector<Fe>& rows, std::uint32_t nrows) {
    if (nrows == 0 || nrows > kMaxVars)
        throw std::invalid_argument("forms: substitution needs 1..8 parameters");
    if (rows.size() != std::size_t(nrows) * f.nvars)
        throw std::invalid_argument("forms: substitution matrix shape mismatch");
    HomogPoly out;
    out.nvars = nrows;
    out.degree = f.degree;
    // X_j pulls back to the linear form sum_u rows[u][j] * U_u.
    std::vector<std::vector<std::pair<std::uint32_t, Fe>>> lin(f.nvars);
    for (std::uint32_t j = 0; j < f.nvars; ++j)
        for (std::uint32_t u = 0; u < nrows; ++u)
            if (rows[std::size_t(u) * f.nvars + j] != 0)
                lin[j].push_back({u, rows[std::size_t(u) * f.nvars + j]});

    for (const auto& [key, c] : f.terms) {
        // expand c * prod_j lin[j]^{e_j} as a sparse poly in the u variables
        std::map<std::uint64_t, Fe> acc{{0, c}};
        for (std::uint32_t j = 0; j < f.nvars && !acc.empty(); ++j) {
            std::uint32_t e = (key >> (8 * (kMaxVars - 1 - j))) & 0xff;
            for (std::uint32_t t = 0; t < e; ++t) {
                std::map<std::uint64_t, Fe> next;
                for (const auto& [ak, av] : acc)
                    for (const auto& [u, lv] : lin[j]) {
                        std::uint64_t nk = ak + (std::uint64_t(1) << (8 * (kMaxVars - 1 - u)));
                        add_term(F, next, nk, F.mul(av, lv));
                    }
                acc.swap(next);
            }
        }
        for (const auto& [ak, av] : acc) add_term(F, out.terms, ak, av);
    }
    return out;
}

HomogPoly restrict_to_flat(const FieldCtx& F, const HomogPoly& f, const Flat& L) {
    if (L.dim < 0) throw std::invalid_argument("forms: restriction needs dim L >= 0");
    if (L.ncols != f.nvars) throw std::invalid_argument("forms: dimension mismatch");
    return substitute_linear(F, f, L.a, L.nrows());
}

std::vector<HomogPoly> partials(const FieldCtx& F, const HomogPoly& f) {
    std::vector<HomogPoly> out(f.nvars);
    for (std::uint32_t i = 0; i < f.nvars; ++i) {
        out[i].nvars = f.nvars;
        out[i].degree = f.degree > 0 ? f.degree - 1 : 0;
    }
    for (const auto& [key, c] : f.terms)
        for (std::uint32_t i = 0; i < f.nvars; ++i) {
            std::uint32_t e = (key >> (8 * (kMaxVars - 1 - i))) & 0xff;
            if (e == 0) continue;
            Fe m = F.mul(c, static_cast<Fe>(e % F.p()));
            if (m == 0) continue;
            std::uint64_t nk = key - (std::uint64_t(1) << (8 * (kMaxVars - 1 - i)));
            add_term(F, out[i].terms, nk, m);
        }
    return out;
}

const std::vector<std::uint64_t>& monomial_basis(std::uint32_t nvars, std::uint32_t degree) {
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint64_t>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find({nvars, degree});
    if (it != cache.end()) return it->second;
    if (nvars == 0 || nvars > kMaxVars)
        throw std::invalid_argument("forms: nvars must be in 1..8");
    if (degree > 255) throw std::invalid_argument("forms: degree exceeds 255");
    std::vector<std::uint64_t> keys;
    std::vector<std::uint32_t> e(nvars, 0);
    std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t i,
                                                                std::uint32_t rem) {
        if (i + 1 == nvars) {
            e[i] = rem;
            keys.push_back(pack_exponents(e));
            return;
        }
        for (std::uint32_t v = 0; v <= rem; ++v) {
            e[i] = v;
            rec(i + 1, rem - v);
        }
        e[i] = 0;
    };
    rec(0, degree);
    std::sort(keys.rbegin(), keys.rend()); // X0-major lexicographic, largest first
    return cache.emplace(std::make_pair(nvars, degree), std::move(keys)).first->second;
}

HomogPoly from_coeffs(std::uint32_t nvars, std::uint32_t degree, const std::vector<Fe>& c) {
    const auto& basis = monomial_basis(nvars, degree);
    if (c.size() != basis.size())
        throw std::invalid_argument("forms: coefficient vector length mismatch");
    HomogPoly out;
    out.nvars = nvars;
    out.degree = degree;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (c[i] != 0) out.terms.emplace(basis[i], c[i]);
    return out;
}

std::vector<Fe> to_coeffs(const HomogPoly& f) {
    const auto& basis = monomial_basis(f.nvars, f.degree);
    std::vector<Fe> c(basis.size(), 0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        auto it = f.terms.find(basis[i]);
        if (it != f.terms.end()) c[i] = it->second;
    }
    for (const auto& kv : f.terms)
        if (key_degree(kv.first) != f.degree)
            throw std::logic_error("forms: term degree mismatch");
    return c;
}

std::string coeff_id(const FieldCtx& F, const HomogPoly& f) {
    auto c = to_coeffs(f);
    std::string s;
    if (F.q() <= 36) {
        for (Fe v : c) s += v < 10 ? char('0' + v) : char('a' + v - 10);
    } else {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) s += '.';
            s += std::to_string(c[i]);
        }
    }
    return s;
}

HomogPoly from_coeff_id(const FieldCtx& F, std::uint32_t nvars, std::uint32_t degree,
                        const std::string& id) {
    const auto& basis = monomial_basis(nvars, degree);
    std::vector<Fe> c;
    if (F.q() <= 36) {
        for (char ch : id) {
            std::uint32_t v;
            if (ch >= '0' && ch <= '9') v = ch - '0';
            else if (ch >= 'a' && ch <= 'z') v = ch - 'a' + 10;
            else throw std::invalid_argument("forms: bad coeff_id digit");
            if (v >= F.q()) throw std::invalid_argument("forms: coeff_id digit out of range");
            c.push_back(static_cast<Fe>(v));
        }
    } else {
        std::size_t pos = 0;
        while (pos <= id.size()) {
            std::size_t end = id.find('.', pos);
            if (end == std::string::npos) end = id.size();
            std::uint64_t v = std::stoull(id.substr(pos, end - pos));
            if (v >= F.q()) throw std::invalid_argument("forms: coeff_id digit out of range");
            c.push_back(static_cast<Fe>(v));
            pos = end + 1;
            if (end == id.size()) break;
        }
    }
    if (c.size() != basis.size())
        throw std::invalid_argument("forms: coeff_id length mismatch");
    return from_coeffs(nvars, degree, c);
}

} // namespace fqhb
