#include "fqhb/census.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace fqhb;
using json = nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

std::vector<std::uint16_t> parse_modulus_csv(const std::string& text) {
    std::vector<std::uint16_t> out;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (cur.empty()) throw std::invalid_argument("--modulus: empty entry");
            out.push_back(std::uint16_t(std::stoul(cur)));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return out;
}

FieldCtx make_field(const std::string& spec, const std::string& modulus_csv) {
    if (modulus_csv.empty()) return field_from_spec(spec);
    FieldCtx probe = field_from_spec(spec);
    return FieldCtx(probe.p(), probe.r(), parse_modulus_csv(modulus_csv));
}

void emit(const json& j, bool pretty) {
    std::cout << (pretty ? j.dump(2) : j.dump()) << "\n";
}

json envelope(const FieldCtx& F) {
    json j;
    j["q"] = F.q();
    j["modulus"] = F.modulus_csv();
    j["version"] = kVersion;
    return j;
}

struct CommonFormArgs {
    std::string field;
    std::string modulus;
    std::uint32_t vars = 0;
    std::string form;
};

void add_form_options(CLI::App* cmd, CommonFormArgs& a) {
    cmd->add_option("--field", a.field, "field size, p^r or plain prime power")
        ->required();
    cmd->add_option("--modulus", a.modulus,
                    "modulus coefficients, constant term first, monic");
    cmd->add_option("--vars", a.vars, "number of variables")->required();
    cmd->add_option("--form", a.form, "homogeneous form, e.g. \"X0*X1+X2^2\"")
        ->required();
}

int run_count(const CommonFormArgs& a, bool pretty) {
    FieldCtx F = make_field(a.field, a.modulus);
    HomogPoly f = parse_form(F, a.form, a.vars);
    json j = envelope(F);
    j["N"] = count_points(F, f);
    emit(j, pretty);
    return 0;
}

int run_invariant(const CommonFormArgs& a, bool pretty) {
    FieldCtx F = make_field(a.field, a.modulus);
    HomogPoly f = parse_form(F, a.form, a.vars);
    InvariantReport rep = invariant_report(F, f);
    if (pretty) {
        json j = envelope(F);
        j["report"] = json::parse(invariant_report_json(rep));
        emit(j, true);
    } else {
        // splice the report verbatim so its documented key order survives
        std::cout << "{\"modulus\":\"" << F.modulus_csv() << "\",\"q\":" << F.q()
                  << ",\"report\":" << invariant_report_json(rep)
                  << ",\"version\":\"" << kVersion << "\"}\n";
    }
    return 0;
}

struct BoundArgs {
    std::int64_t n = 0, k = 0, d = 0, h = -1;
    std::uint64_t q = 0;
    std::string kind = "theta";
    std::string quadric = "parabolic";
};

int run_bound(const BoundArgs& a, bool pretty) {
    BigInt value = 0;
    if (a.kind == "theta") {
        value = theta({a.n, a.k, a.d, a.q});
    } else if (a.kind == "serre") {
        value = serre_bound(a.d, a.n, a.q);
    } else if (a.kind == "singular-k0") {
        value = singular_k0_bound(a.d, a.n, a.q);
    } else if (a.kind == "homma-k0") {
        value = homma_k0_bound(a.d, a.n, a.q);
    } else if (a.kind == "cone-count") {
        QuadricKind qk;
        if (a.quadric == "parabolic")
            qk = QuadricKind::parabolic;
        else if (a.quadric == "hyperbolic")
            qk = QuadricKind::hyperbolic;
        else if (a.quadric == "elliptic")
            qk = QuadricKind::elliptic;
        else
            throw std::invalid_argument("--quadric: expected parabolic, hyperbolic "
                                        "or elliptic");
        value = quadric_cone_count(a.n, a.h, qk, a.q);
    } else {
        throw std::invalid_argument("--kind: expected theta, serre, singular-k0, "
                                    "homma-k0 or cone-count");
    }
    json j;
    j["q"] = a.q;
    j["version"] = kVersion;
    try {
        j["modulus"] = field_from_spec(std::to_string(a.q)).modulus_csv();
    } catch (const std::invalid_argument&) {
        j["modulus"] = nullptr; // q beyond the table range; bounds still apply
    }
    j["kind"] = a.kind;
    j["n"] = a.n;
    if (a.kind == "theta") j["k"] = a.k;
    if (a.kind == "cone-count") {
        j["vertex"] = a.h;
        j["quadric"] = a.quadric;
    } else {
        j["d"] = a.d;
    }
    j["value"] = bigint_to_string(value);
    emit(j, pretty);
    return 0;
}

struct ConstructArgs {
    std::string family;
    std::string field;
    std::string modulus;
    std::int64_t dim = -1;
    std::int64_t vertex = -1;
    std::int64_t alpha = -1;
    std::int64_t d = -1, n = -1;
    std::string matrix;
};

HomogPoly build_family(const FieldCtx& F, const ConstructArgs& a) {
    auto need = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(what);
    };
    HomogPoly f;
    if (a.family == "hermitian") {
        need(a.dim >= 1, "--dim: hermitian needs the variety dimension");
        f = hermitian(F, std::uint32_t(a.dim));
    } else if (a.family == "hyperbolic") {
        need(a.dim >= 1, "--dim: hyperbolic needs the split parameter s");
        f = hyperbolic_quadric(F, std::uint32_t(a.dim));
    } else if (a.family == "elliptic") {
        need(a.alpha >= 0, "--alpha: elliptic needs a field element");
        f = elliptic_surface(F, Fe(a.alpha));
    } else if (a.family == "conic") {
        f = conic(F);
    } else if (a.family == "space-filling") {
        need(!a.matrix.empty(), "--matrix: space-filling needs the strict upper "
                                "triangle entries");
        std::vector<std::uint16_t> raw = parse_modulus_csv(a.matrix);
        std::vector<Fe> upper(raw.begin(), raw.end());
        std::uint32_t m = 2;
        while (std::size_t(m) * (m - 1) / 2 < upper.size()) ++m;
        need(std::size_t(m) * (m - 1) / 2 == upper.size(),
             "--matrix: entry count must be m(m-1)/2");
        f = space_filling(F, antisym_from_upper(F, m, upper));
    } else if (a.family == "hyperplanes") {
        need(a.d >= 2 && a.n >= 1, "--d and --n: hyperplanes needs both");
        std::uint32_t nv = std::uint32_t(a.n) + 2;
        std::vector<std::vector<Fe>> hs;
        hs.push_back(std::vector<Fe>(nv, 0));
        hs.back()[0] = 1;
        hs.push_back(std::vector<Fe>(nv, 0));
        hs.back()[1] = 1;
        for (std::int64_t t = 1; t + 2 <= a.d; ++t) {
            std::vector<Fe> h(nv, 0);
            h[0] = 1;
            h[1] = Fe(t);
            hs.push_back(h);
        }
        f = concurrent_hyperplanes(F, std::uint32_t(a.d), std::uint32_t(a.n), hs);
    } else {
        throw std::invalid_argument(
            "family: expected hermitian, hyperbolic, elliptic, conic, "
            "space-filling or hyperplanes");
    }
    if (a.vertex >= 0) f = cone(std::uint32_t(a.vertex), f);
    return f;
}

int run_construct(const ConstructArgs& a, bool pretty) {
    FieldCtx F = make_field(a.field, a.modulus);
    HomogPoly f = build_family(F, a);
    InvariantReport rep = invariant_report(F, f);
    FamilyLabel label = classify_maximizer(F, f, rep);
    if (pretty) {
        json j = envelope(F);
        j["family"] = a.family;
        j["form"] = print_form(F, f);
        j["label"] = family_label_name(label);
        j["report"] = json::parse(invariant_report_json(rep));
        emit(j, true);
    } else {
        std::cout << "{\"family\":\"" << a.family << "\",\"form\":\""
                  << print_form(F, f) << "\",\"label\":\""
                  << family_label_name(label) << "\",\"modulus\":\""
                  << F.modulus_csv() << "\",\"q\":" << F.q()
                  << ",\"report\":" << invariant_report_json(rep)
                  << ",\"version\":\"" << kVersion << "\"}\n";
    }
    return 0;
}

struct CensusArgs {
    std::string field;
    std::string modulus;
    std::uint32_t d = 0, n = 0;
    std::string mode = "exhaustive";
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
    std::uint32_t shards = 1;
    std::uint64_t budget = 0;
    std::string out;
    bool verify = false;
    bool cross_check = false;
};

int run_census(const CensusArgs& a, bool pretty) {
    FieldCtx F = make_field(a.field, a.modulus);
    CensusOptions opt;
    if (a.mode == "exhaustive") {
        opt.mode = CensusMode::exhaustive;
    } else if (a.mode == "random") {
        opt.mode = CensusMode::random_sample;
        if (a.count == 0)
            throw std::invalid_argument("--count: random mode needs a sample size");
    } else {
        throw std::invalid_argument("--mode: expected exhaustive or random");
    }
    opt.random_count = a.count;
    opt.seed = a.seed;
    opt.shards = a.shards;
    opt.budget = a.budget;
    opt.verify = a.verify;
    opt.cross_check = a.cross_check;
    CensusResult res = census(F, a.d, a.n, opt);
    std::string csv = census_csv(res.records);
    if (a.out.empty()) {
        std::cout << csv;
    } else {
        std::ofstream f(a.out, std::ios::binary);
        if (!f) throw std::invalid_argument("--out: cannot open " + a.out);
        f << csv;
    }
    json j = json::parse(census_summary_json(res.summary));
    j["modulus"] = F.modulus_csv();
    j["version"] = kVersion;
    emit(j, pretty);
    return res.summary.violations.empty() ? 0 : 1;
}

int run_verify(const std::string& grid_arg, bool pretty) {
    std::vector<GridTuple> grid;
    if (grid_arg == "default") {
        grid = default_grid();
    } else {
        std::ifstream f(grid_arg);
        if (!f) throw std::invalid_argument("--grid: cannot open " + grid_arg);
        json spec = json::parse(f);
        for (const auto& t : spec) {
            if (t.is_array())
                grid.push_back({t.at(0).get<std::uint64_t>(),
                                t.at(1).get<std::uint32_t>(),
                                t.at(2).get<std::uint32_t>()});
            else
                grid.push_back({t.at("q").get<std::uint64_t>(),
                                t.at("d").get<std::uint32_t>(),
                                t.at("n").get<std::uint32_t>()});
        }
    }
    VerifyReport rep = verify_theorems(grid);
    json j = json::parse(verify_report_json(rep));
    j["version"] = kVersion;
    emit(j, pretty);
    return rep.all_pass ? 0 : 1;
}

struct EquivArgs {
    std::string field;
    std::string modulus;
    std::uint32_t vars = 0;
    std::string a, b;
    std::uint64_t budget = 1000000;
};

int run_equiv(const EquivArgs& ar, bool pretty) {
    FieldCtx F = make_field(ar.field, ar.modulus);
    HomogPoly A = parse_form(F, ar.a, ar.vars);
    HomogPoly B = parse_form(F, ar.b, ar.vars);
    EquivResult r = equiv(F, A, B, ar.budget);
    json j = envelope(F);
    j["order"] = pgl_order(ar.vars, F.q());
    switch (r.kind) {
        case EquivResult::Kind::equivalent: j["kind"] = "equivalent"; break;
        case EquivResult::Kind::inequivalent: j["kind"] = "inequivalent"; break;
        case EquivResult::Kind::budget_exceeded: j["kind"] = "budget_exceeded"; break;
    }
    if (r.kind == EquivResult::Kind::equivalent) {
        json m = json::array();
        for (Fe v : r.matrix) m.push_back(v);
        j["matrix"] = m;
    }
    emit(j, pretty);
    return 0;
}

int run_fields(const std::string& spec, const std::string& modulus, bool pretty) {
    if (!spec.empty()) {
        FieldCtx F = make_field(spec, modulus);
        json j = envelope(F);
        j["p"] = F.p();
        j["r"] = F.r();
        j["generator"] = F.generator();
        emit(j, pretty);
        return 0;
    }
    json arr = json::array();
    for (const ModulusEntry& e : default_moduli()) {
        json m;
        m["p"] = e.p;
        m["r"] = e.r;
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < e.r; ++i) q *= e.p;
        m["q"] = q;
        std::string cs;
        for (std::size_t i = 0; i < e.coeffs.size(); ++i) {
            if (i) cs += ',';
            cs += std::to_string(e.coeffs[i]);
        }
        m["modulus"] = cs;
        arr.push_back(m);
    }
    json j;
    j["version"] = kVersion;
    j["defaults"] = arr;
    emit(j, pretty);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-geometry point counts, flat invariants and bounds for "
                 "projective hypersurfaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    bool pretty = false;
    app.add_flag("--pretty", pretty, "indent JSON output");

    CommonFormArgs count_args;
    CLI::App* c_count = app.add_subcommand("count", "count rational points");
    add_form_options(c_count, count_args);

    CommonFormArgs inv_args;
    CLI::App* c_inv = app.add_subcommand("invariant", "full hypersurface report");
    add_form_options(c_inv, inv_args);

    BoundArgs bound_args;
    CLI::App* c_bound = app.add_subcommand("bound", "evaluate a point-count bound");
    c_bound->add_option("--n", bound_args.n, "hypersurface dimension")->required();
    c_bound->add_option("--k", bound_args.k, "flat-dimension invariant");
    c_bound->add_option("--d", bound_args.d, "degree");
    c_bound->add_option("--q", bound_args.q, "field size")->required();
    c_bound->add_option("--vertex", bound_args.h, "cone vertex dimension");
    c_bound->add_option("--kind", bound_args.kind,
                        "theta, serre, singular-k0, homma-k0 or cone-count");
    c_bound->add_option("--quadric", bound_args.quadric,
                        "parabolic, hyperbolic or elliptic (cone-count)");

    ConstructArgs con_args;
    CLI::App* c_con = app.add_subcommand("construct", "build an extremal family");
    c_con->add_option("family", con_args.family,
                      "hermitian, hyperbolic, elliptic, conic, space-filling or "
                      "hyperplanes")
        ->required();
    c_con->add_option("--q", con_args.field, "field size")->required();
    c_con->add_option("--modulus", con_args.modulus, "custom field modulus");
    c_con->add_option("--dim", con_args.dim, "variety dimension / split parameter");
    c_con->add_option("--vertex", con_args.vertex,
                      "apex dimension; builds the cone when >= 0");
    c_con->add_option("--alpha", con_args.alpha, "elliptic parameter");
    c_con->add_option("--d", con_args.d, "degree (hyperplanes)");
    c_con->add_option("--n", con_args.n, "hypersurface dimension (hyperplanes)");
    c_con->add_option("--matrix", con_args.matrix,
                      "strict upper triangle a01,a02,... (space-filling)");

    CensusArgs cen_args;
    CLI::App* c_cen = app.add_subcommand("census", "survey all forms at (q, d, n)");
    c_cen->add_option("--q", cen_args.field, "field size")->required();
    c_cen->add_option("--modulus", cen_args.modulus, "custom field modulus");
    c_cen->add_option("--d", cen_args.d, "degree")->required();
    c_cen->add_option("--n", cen_args.n, "hypersurface dimension")->required();
    c_cen->add_option("--mode", cen_args.mode, "exhaustive or random");
    c_cen->add_option("--count", cen_args.count, "sample size (random)");
    c_cen->add_option("--seed", cen_args.seed, "RNG seed (random)");
    c_cen->add_option("--shards", cen_args.shards, "worker count");
    c_cen->add_option("--budget", cen_args.budget,
                      "class-count ceiling; 0 reads FQHB_BUDGET or 10^7");
    c_cen->add_option("--out", cen_args.out, "write records CSV here");
    c_cen->add_flag("--verify", cen_args.verify,
                    "flag unrecognized maximizers as violations");
    c_cen->add_flag("--cross-check", cen_args.cross_check,
                    "recount every form with the sparse evaluator");

    std::string grid_arg = "default";
    CLI::App* c_ver = app.add_subcommand("verify", "check the theorems on a grid");
    c_ver->add_option("--grid", grid_arg, "\"default\" or a JSON grid file");

    EquivArgs eq_args;
    CLI::App* c_eq = app.add_subcommand("equiv", "exact projective equivalence");
    c_eq->add_option("--field", eq_args.field, "field size")->required();
    c_eq->add_option("--modulus", eq_args.modulus, "custom field modulus");
    c_eq->add_option("--vars", eq_args.vars, "number of variables")->required();
    c_eq->add_option("--a", eq_args.a, "first form")->required();
    c_eq->add_option("--b", eq_args.b, "second form")->required();
    c_eq->add_option("--budget", eq_args.budget, "largest group order to search");

    std::string fields_spec, fields_modulus;
    CLI::App* c_fld = app.add_subcommand("fields", "resolve or list field moduli");
    c_fld->add_option("--q", fields_spec, "field size to resolve");
    c_fld->add_option("--modulus", fields_modulus, "custom field modulus");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForVersion")
            return app.exit(e);
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(c_count)) return run_count(count_args, pretty);
        if (app.got_subcommand(c_inv)) return run_invariant(inv_args, pretty);
        if (app.got_subcommand(c_bound)) return run_bound(bound_args, pretty);
        if (app.got_subcommand(c_con)) return run_construct(con_args, pretty);
        if (app.got_subcommand(c_cen)) return run_census(cen_args, pretty);
        if (app.got_subcommand(c_ver)) return run_verify(grid_arg, pretty);
        if (app.got_subcommand(c_eq)) return run_equiv(eq_args, pretty);
        if (app.got_subcommand(c_fld))
            return run_fields(fields_spec, fields_modulus, pretty);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
