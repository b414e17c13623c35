// polychain: command-line front end for the chain calculator.
//
// Subcommands cover chain I/O and every library operation; `reproduce-all`
// runs the full reproduction suite.  Reports are deterministic for identical
// inputs and seeds: rationals print as "p/q", floats appear only as certified
// interval endpoints, and timing is attached only with --timing.
//
// Exit codes: 0 success, 1 usage or input error, 2 verification failure.

#include "CLI11.hpp"

#include "polychain/acceptance.hpp"
#include "polychain/errors.hpp"
#include "polychain/flatnorm.hpp"
#include "polychain/lab.hpp"
#include "polychain/report.hpp"
#include "polychain/slicing.hpp"
#include "polychain/tensor.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using namespace polychain;

namespace {

struct Ctx {
    bool json = false;
    bool timing = false;
    bool pad_check = false;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string tolerance = "0";
    std::string command;
    int exit_code = 0;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json load_json(const std::string& path, RunReport& rep) {
    std::string bytes = slurp(path);
    rep.add_input(bytes);
    try {
        return Json::parse(bytes);
    } catch (const std::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

Chain load_chain(const std::string& path, RunReport& rep) {
    Chain c = Chain::from_json(load_json(path, rep));
    if (!(Chain::from_json(c.to_json()) == c))
        throw ParseError(path + ": serialization round trip failed");
    return c;
}

TensorChain load_tensor(const std::string& path, RunReport& rep) {
    TensorChain t = TensorChain::from_json(load_json(path, rep));
    if (!(TensorChain::from_json(t.to_json()) == t))
        throw ParseError(path + ": serialization round trip failed");
    return t;
}

void write_json(const std::string& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw UsageError("cannot write output file: " + path);
    out << j.dump(2) << "\n";
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

RatVec parse_rats(const std::string& csv) {
    RatVec v;
    for (const auto& p : split(csv, ','))
        v.push_back(rat_from_string(p));
    return v;
}

std::vector<int> parse_axes(const std::string& csv) {
    // 1-based on the command line, 0-based internally
    std::vector<int> v;
    for (const auto& p : split(csv, ',')) {
        int axis = std::stoi(p);
        if (axis < 1)
            throw UsageError("axes are 1-based: got " + p);
        v.push_back(axis - 1);
    }
    return v;
}

// "--complex x0,x1:h:e0,e1": origin coordinates, spacing, per-axis cell counts.
std::shared_ptr<CubicalComplex> parse_complex(const std::string& spec, int n1) {
    auto parts = split(spec, ':');
    if (parts.size() != 3)
        throw UsageError("complex spec must be origin:spacing:extents, e.g. -2,-2:1:5,5");
    Point origin = parse_rats(parts[0]);
    Rat h = rat_from_string(parts[1]);
    std::vector<int> extents;
    for (const auto& p : split(parts[2], ','))
        extents.push_back(std::stoi(p));
    return std::make_shared<CubicalComplex>(origin, h, extents, n1);
}

Json chain_summary(const Chain& c) {
    Json j = Json::object();
    j["ambient"] = c.ambient();
    j["dim"] = c.dim();
    j["group"] = c.group().to_string();
    j["terms"] = c.terms().size();
    j["mass"] = mass_json(c.mass());
    return j;
}

const char* verdict_name(SplitVerdict v) {
    switch (v) {
    case SplitVerdict::Split: return "Split";
    case SplitVerdict::NotSplit: return "NotSplit";
    default: return "NeedsCertifiedRep";
    }
}

const char* verdict_name(VanishVerdict v) {
    switch (v) {
    case VanishVerdict::Vanishes: return "Vanishes";
    case VanishVerdict::NonzeroAt: return "NonzeroAt";
    default: return "Unknown";
    }
}

int emit(Ctx& ctx, RunReport& rep, double secs, int code) {
    rep.command = ctx.command;
    rep.include_timing = ctx.timing;
    rep.elapsed_s = secs;
    if (ctx.json)
        std::cout << rep.to_json().dump(2) << "\n";
    else
        std::cout << rep.to_text();
    return code;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double secs() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

// ---------------------------------------------------------------- commands

int cmd_info(Ctx& ctx, const std::string& file) {
    Timer t;
    RunReport rep;
    Json j = load_json(file, rep);
    if (j.contains("split")) {
        TensorChain tc = TensorChain::from_json(j);
        rep.results["kind"] = "tensor-chain";
        rep.results["split"] = {tc.n1(), tc.n2()};
        rep.results["type"] = {tc.k1(), tc.k2()};
        rep.results["group"] = tc.group().to_string();
        rep.results["terms"] = tc.terms().size();
        rep.results["embedded"] = chain_summary(embed(tc));
    } else {
        Chain c = Chain::from_json(j);
        rep.results["kind"] = "chain";
        rep.results.update(chain_summary(c));
    }
    return emit(ctx, rep, t.secs(), 0);
}

int cmd_boundary(Ctx& ctx, const std::string& file, const std::string& out) {
    Timer t;
    RunReport rep;
    Chain b = load_chain(file, rep).boundary();
    rep.results["boundary"] = chain_summary(b);
    if (!out.empty())
        write_json(out, b.to_json());
    return emit(ctx, rep, t.secs(), 0);
}

int cmd_mass(Ctx& ctx, const std::string& file) {
    Timer t;
    RunReport rep;
    MassReport m = load_chain(file, rep).mass();
    rep.results["mass"] = mass_json(m);
    rep.verdicts.push_back({"mass certified", m.certified});
    return emit(ctx, rep, t.secs(), 0);
}

int cmd_restrict(Ctx& ctx, const std::string& file, const std::string& box_spec,
                 int axis, const std::string& level, bool upper,
                 const std::string& out) {
    Timer t;
    RunReport rep;
    Chain c = load_chain(file, rep);
    Chain r = c;
    if (!box_spec.empty()) {
        Box box;
        for (const auto& ax : split(box_spec, ',')) {
            auto lohi = split(ax, ':');
            if (lohi.size() != 2)
                throw UsageError("box axis must be lo:hi with * for unbounded");
            std::pair<std::optional<Rat>, std::optional<Rat>> b;
            if (lohi[0] != "*")
                b.first = rat_from_string(lohi[0]);
            if (lohi[1] != "*")
                b.second = rat_from_string(lohi[1]);
            box.push_back(b);
        }
        r = c.restrict_box(box);
    } else if (axis >= 1) {
        r = restrict_halfspace(c, axis - 1, rat_from_string(level), upper);
    } else {
        throw UsageError("restrict needs --box or --axis/--level");
    }
    rep.results["restricted"] = chain_summary(r);
    if (!out.empty())
        write_json(out, r.to_json());
    return emit(ctx, rep, t.secs(), 0);
}

int cmd_product(Ctx& ctx, const std::string& fa, const std::string& fb,
                const std::string& out) {
    Timer t;
    RunReport rep;
    Chain a = load_chain(fa, rep);
    Chain b = load_chain(fb, rep);
    Chain p = cartesian_product(a, b);
    rep.results["product"] = chain_summary(p);
    if (!out.empty())
        write_json(out, p.to_json());
    return emit(ctx, rep, t.secs(), 0);
}

int cmd_slice(Ctx& ctx, const std::string& file, const std::string& gamma,
              const std::string& at, const std::string& out) {
    Timer t;
    RunReport rep;
    Chain c = load_chain(file, rep);
    SliceSpec spec{parse_axes(gamma), parse_rats(at)};
    Chain s = slice(c, spec);
    rep.results["slice"] = chain_summary(s);
    if (!out.empty())
        write_json(out, s.to_json());
    return emit(ctx, rep, t.secs(), 0);
}

int cmd_coarea(Ctx& ctx, const std::string& file, const std::string& gamma) {
    Timer t;
    RunReport rep;
    Chain c = load_chain(file, rep);
    CertifiedReal bound = coarea_bound(c, parse_axes(gamma));
    rep.results["coarea_bound"] = certified_json(bound);
    rep.results["mass"] = mass_json(c.mass());
    return emit(ctx, rep, t.secs(), 0);
}

int cmd_split_test(Ctx& ctx, const std::string& file, int k1, int k2, int n1) {
    Timer t;
    RunReport rep;
    Chain c = load_chain(file, rep);
    SplitResult r = splitting_test(c, k1, k2, n1);
    rep.results["verdict"] = verdict_name(r.verdict);
    if (r.witness_cell)
        rep.results["witness_term"] = *r.witness_cell;
    if (r.witness_gamma) {
        Json g = Json::array();
        for (int a : *r.witness_gamma)
            g.push_back(a + 1); // report 1-based
        rep.results["witness_gamma"] = g;
    }
    return emit(ctx, rep, t.secs(), 0);
}

int cmd_jtype_test(Ctx& ctx, const std::string& file, int k1p, int k2p, int n1) {
    Timer t;
    RunReport rep;
    Chain c = load_chain(file, rep);
    VanishResult r = j_vanishing_test(c, k1p, k2p, n1);
    rep.results["verdict"] = verdict_name(r.verdict);
    if (r.witness)
        rep.results["witness_point"] = point_to_json(*r.witness);
    if (r.witness_gamma) {
        Json g = Json::array();
        for (int a : *r.witness_gamma)
            g.push_back(a + 1);
        rep.results["witness_gamma"] = g;
    }
    if (r.samples > 0)
        rep.results["samples"] = r.samples;
    return emit(ctx, rep, t.secs(), 0);
}

int cmd_jdecompose(Ctx& ctx, const std::string& file, int n1, const std::string& out) {
    Timer t;
    RunReport rep;
    Chain c = load_chain(file, rep);
    auto parts = j_decompose(c, n1);
    Json comps = Json::object();
    Json files = Json::object();
    for (const auto& [ty, part] : parts) {
        std::string key = std::to_string(ty.k1) + "," + std::to_string(ty.k2);
        Json pj = Json::object();
        pj["terms"] = part.terms().size();
        pj["mass"] = mass_json(embed(part).mass());
        comps[key] = pj;
        files[key] = part.to_json();
    }
    rep.results["components"] = comps;
    if (!out.empty())
        write_json(out, files);
    return emit(ctx, rep, t.secs(), 0);
}

int cmd_embed(Ctx& ctx, const std::string& file, const std::string& out) {
    Timer t;
    RunReport rep;
    Chain e = embed(load_tensor(file, rep));
    rep.results["embedded"] = chain_summary(e);
    if (!out.empty())
        write_json(out, e.to_json());
    return emit(ctx, rep, t.secs(), 0);
}

int cmd_chi(Ctx& ctx, const std::string& file) {
    Timer t;
    RunReport rep;
    Json j = load_json(file, rep);
    GVal v = j.contains("split") ? chi_wedge(TensorChain::from_json(j))
                                 : chi(Chain::from_json(j));
    rep.results["chi"] = v.to_json();
    rep.verdicts.push_back({"augmentation zero", v.is_zero()});
    return emit(ctx, rep, t.secs(), 0);
}

int cmd_collapse(Ctx& ctx, const std::string& file, int level, const std::string& out) {
    Timer t;
    RunReport rep;
    TensorChain tc = load_tensor(file, rep);
    TensorChain snapped = dyadic_collapse(tc, level);
    rep.results["level"] = level;
    rep.results["terms"] = snapped.terms().size();
    rep.results["embedded"] = chain_summary(embed(snapped));
    if (!out.empty())
        write_json(out, snapped.to_json());
    return emit(ctx, rep, t.secs(), 0);
}

int cmd_flatnorm(Ctx& ctx, const std::string& complex_spec, int n1,
                 const std::string& file, bool tensor, int k1, int k2) {
    Timer t;
    RunReport rep;
    Chain c = load_chain(file, rep);
    auto cx = parse_complex(complex_spec, n1);
    GridChain g = rasterize(cx, c);
    LPResult r = tensor ? tensor_flat_norm(g, TypeIndex{k1, k2}) : flat_norm(g);
    rep.results["value"] = rat_json(r.value);
    rep.results["pivots"] = r.pivots;
    Json wit = Json::object();
    for (const auto& [name, piece] : r.witness)
        wit[name] = rat_json(grid_mass(piece));
    rep.results["witness_mass"] = wit;
    rep.results["boundary_touched"] = r.boundary_touched;
    rep.verdicts.push_back({"optimum certified", r.certified});
    if (ctx.pad_check) {
        GridChain gp = transplant(g, std::make_shared<CubicalComplex>(cx->padded(2)));
        LPResult rp = tensor ? tensor_flat_norm(gp, TypeIndex{k1, k2}) : flat_norm(gp);
        rep.results["padded_value"] = rat_json(rp.value);
        Rat delta = abs(rp.value - r.value);
        rep.verdicts.push_back(
            {"pad stable", delta <= rat_from_string(ctx.tolerance)});
    }
    return emit(ctx, rep, t.secs(), 0);
}

int cmd_crossmass(Ctx& ctx, const std::string& file, int n1) {
    Timer t;
    RunReport rep;
    Chain c = load_chain(file, rep);
    CrossMassBounds b = cross_mass_bounds(c, n1);
    rep.results["m"] = b.m;
    rep.results["constant"] = certified_json(b.constant);
    rep.results["lower"] = certified_json(b.lower);
    rep.results["upper"] = certified_json(b.upper);
    rep.results["mass"] = mass_json(b.mass);
    return emit(ctx, rep, t.secs(), 0);
}

int cmd_lab_staircase(Ctx& ctx, int level, bool growth) {
    Timer t;
    RunReport rep;
    StaircasePair p = build_staircase({level});
    rep.results["level"] = level;
    rep.results["a1"] = chain_summary(p.a1);
    rep.results["a2"] = chain_summary(p.a2);
    Chain rim = (p.a1 + p.a2).boundary();
    Json atoms = Json::array();
    for (const auto& term : rim.terms()) {
        Json a = Json::object();
        a["at"] = point_to_json(term.cell.verts[0]);
        a["coeff"] = rat_json(term.coeff.value());
        atoms.push_back(a);
    }
    rep.results["rim"] = atoms;
    rep.verdicts.push_back({"two rim atoms", rim.terms().size() == 2});
    rep.verdicts.push_back({"rim augmentation zero", chi(rim).is_zero()});
    if (growth) {
        Json rows = Json::array();
        for (const auto& row : staircase_boundary_growth(level)) {
            Json r = Json::object();
            r["level"] = row.level;
            r["boundary_mass"] = rat_json(row.boundary_mass);
            rows.push_back(r);
        }
        rep.results["boundary_growth"] = rows;
    }
    return emit(ctx, rep, t.secs(), 0);
}

int cmd_lab_counterexample(Ctx& ctx, const std::string& spec_file, int legs,
                           bool verify, const std::string& out) {
    Timer t;
    RunReport rep;
    ThetaGraphSpec spec = spec_file.empty()
                              ? default_theta_spec(legs)
                              : ThetaGraphSpec::from_json(load_json(spec_file, rep));
    CounterexampleResult r = build_counterexample(spec);
    rep.results["legs"] = spec.paths.size();
    rep.results["common_length"] = certified_json(spec.common_length);
    rep.results["mass"] = mass_json(r.report.mass);
    rep.results["expected_mass"] = certified_json(r.report.expected_mass);
    rep.results["split_verdict"] = verdict_name(r.report.split);
    Json off = Json::array();
    bool off_ok = true;
    for (const auto& [ty, verdict] : r.report.off_type) {
        Json o = Json::object();
        o["type"] = {ty.k1, ty.k2};
        o["verdict"] = verdict_name(verdict);
        off_ok = off_ok && verdict == VanishVerdict::Vanishes;
        off.push_back(o);
    }
    rep.results["off_type"] = off;
    rep.verdicts.push_back({"mass matches 2N l^2", r.report.mass_matches});
    rep.verdicts.push_back({"boundary vanishes", r.report.boundary_zero});
    rep.verdicts.push_back(
        {"splits as (1,1)", r.report.split == SplitVerdict::Split});
    rep.verdicts.push_back({"off-type slices vanish", off_ok});
    if (!out.empty())
        write_json(out, r.a.to_json());
    bool all_ok = r.report.mass_matches && r.report.boundary_zero &&
                  r.report.split == SplitVerdict::Split && off_ok;
    return emit(ctx, rep, t.secs(), verify && !all_ok ? 2 : 0);
}

int cmd_lab_ip_search(Ctx& ctx, int n, int terms, int bound, long long budget) {
    Timer t;
    RunReport rep;
    SearchResult r = decomposition_lower_bound_search(n, terms, bound, budget);
    rep.results["found"] = r.found;
    if (r.found)
        rep.results["min_found"] = r.min_found;
    rep.results["nodes"] = r.nodes;
    rep.verdicts.push_back({"all feasible costs even", r.parity_even});
    Json wit = Json::array();
    for (const auto& term : r.witness) {
        Json w = Json::object();
        w["m"] = term.m;
        w["mp"] = term.mp;
        wit.push_back(w);
    }
    rep.results["witness"] = wit;
    return emit(ctx, rep, t.secs(), 0);
}

int cmd_reproduce_all(Ctx& ctx) {
    Timer t;
    RunReport rep;
    auto results = run_acceptance(ctx.seed, ctx.threads);
    Json items = Json::array();
    int failures = 0;
    for (const auto& r : results) {
        Json item = Json::object();
        item["id"] = r.id;
        item["name"] = r.name;
        item["pass"] = r.pass;
        item["detail"] = r.detail;
        if (ctx.timing)
            item["seconds"] = r.seconds;
        items.push_back(item);
        rep.verdicts.push_back({std::to_string(r.id) + " " + r.name, r.pass});
        if (!r.pass)
            ++failures;
    }
    rep.results["items"] = items;
    rep.results["failures"] = failures;
    return emit(ctx, rep, t.secs(), failures == 0 ? 0 : 2);
}

} // namespace

int main(int argc, char** argv) {
    Ctx ctx;
    for (int i = 1; i < argc; ++i)
        ctx.command += (i > 1 ? " " : "") + std::string(argv[i]);

    CLI::App app{"exact calculator for polyhedral chains, tensor chains, and flat norms"};
    app.require_subcommand(1);
    app.add_flag("--json", ctx.json, "emit the report as JSON");
    app.add_flag("--timing", ctx.timing, "attach wall-clock timing to reports");
    app.add_flag("--pad-check", ctx.pad_check,
                 "re-solve flat norms on a padded complex and compare");
    app.add_option("--seed", ctx.seed, "seed for randomized suite items");
    app.add_option("--threads", ctx.threads, "worker threads for reproduce-all");
    app.add_option("--tolerance", ctx.tolerance,
                   "rational tolerance for --pad-check comparisons");

    std::string file, file_b, out, box_spec, gamma, at, level_str, complex_spec,
        spec_file;
    int k1 = 0, k2 = 0, n1 = 1, axis = 0, level = 0, legs = 3, terms = 3, bound = 2;
    long long budget = 50000000;
    bool upper = false, tensor = false, growth = false, verify = false;

    auto* info = app.add_subcommand("info", "describe a chain or tensor-chain file");
    info->add_option("file", file)->required();
    info->callback([&] { ctx.exit_code = cmd_info(ctx, file); });

    auto* boundary = app.add_subcommand("boundary", "boundary of a chain");
    boundary->add_option("file", file)->required();
    boundary->add_option("-o,--out", out, "write the boundary chain JSON here");
    boundary->callback([&] { ctx.exit_code = cmd_boundary(ctx, file, out); });

    auto* mass = app.add_subcommand("mass", "certified mass of a chain");
    mass->add_option("file", file)->required();
    mass->callback([&] { ctx.exit_code = cmd_mass(ctx, file); });

    auto* restrict_sc = app.add_subcommand("restrict", "restrict to a box or half-space");
    restrict_sc->add_option("file", file)->required();
    restrict_sc->add_option("--box", box_spec, "per-axis lo:hi bounds, * unbounded, comma separated");
    restrict_sc->add_option("--axis", axis, "1-based axis for a half-space restriction");
    restrict_sc->add_option("--level", level_str, "half-space level (rational)");
    restrict_sc->add_flag("--upper", upper, "keep the upper half-space");
    restrict_sc->add_option("-o,--out", out);
    restrict_sc->callback([&] {
        ctx.exit_code = cmd_restrict(ctx, file, box_spec, axis, level_str, upper, out);
    });

    auto* product = app.add_subcommand("product", "cartesian product of two chains");
    product->add_option("a", file)->required();
    product->add_option("b", file_b)->required();
    product->add_option("-o,--out", out);
    product->callback([&] { ctx.exit_code = cmd_product(ctx, file, file_b, out); });

    auto* slice_sc = app.add_subcommand("slice", "slice a chain at a base point");
    slice_sc->add_option("file", file)->required();
    slice_sc->add_option("--gamma", gamma, "1-based slice axes, comma separated")->required();
    slice_sc->add_option("--at", at, "base point coordinates, comma separated")->required();
    slice_sc->add_option("-o,--out", out);
    slice_sc->callback([&] { ctx.exit_code = cmd_slice(ctx, file, gamma, at, out); });

    auto* coarea = app.add_subcommand("coarea", "coarea upper bound for slice masses");
    coarea->add_option("file", file)->required();
    coarea->add_option("--gamma", gamma)->required();
    coarea->callback([&] { ctx.exit_code = cmd_coarea(ctx, file, gamma); });

    auto* split_test = app.add_subcommand("split-test", "does the chain split as (k1,k2)?");
    split_test->add_option("file", file)->required();
    split_test->add_option("--k1", k1)->required();
    split_test->add_option("--k2", k2)->required();
    split_test->add_option("--n1", n1)->required();
    split_test->callback([&] { ctx.exit_code = cmd_split_test(ctx, file, k1, k2, n1); });

    auto* jtype = app.add_subcommand("jtype-test", "do the (k1',k2')-slices vanish a.e.?");
    jtype->add_option("file", file)->required();
    jtype->add_option("--k1", k1)->required();
    jtype->add_option("--k2", k2)->required();
    jtype->add_option("--n1", n1)->required();
    jtype->callback([&] { ctx.exit_code = cmd_jtype_test(ctx, file, k1, k2, n1); });

    auto* jdec = app.add_subcommand("jdecompose", "type decomposition of a product-cell chain");
    jdec->add_option("file", file)->required();
    jdec->add_option("--n1", n1)->required();
    jdec->add_option("-o,--out", out, "write all components as one JSON object");
    jdec->callback([&] { ctx.exit_code = cmd_jdecompose(ctx, file, n1, out); });

    auto* embed_sc = app.add_subcommand("embed", "embed a tensor chain into R^(n1+n2)");
    embed_sc->add_option("file", file)->required();
    embed_sc->add_option("-o,--out", out);
    embed_sc->callback([&] { ctx.exit_code = cmd_embed(ctx, file, out); });

    auto* chi_sc = app.add_subcommand("chi", "augmentation of a 0-chain or (0,0) tensor chain");
    chi_sc->add_option("file", file)->required();
    chi_sc->callback([&] { ctx.exit_code = cmd_chi(ctx, file); });

    auto* collapse = app.add_subcommand("collapse", "dyadic first-factor collapse");
    collapse->add_option("file", file)->required();
    collapse->add_option("--level", level)->required();
    collapse->add_option("-o,--out", out);
    collapse->callback([&] { ctx.exit_code = cmd_collapse(ctx, file, level, out); });

    auto* fn = app.add_subcommand("flatnorm", "flat norm relative to a cubical complex");
    fn->add_option("--complex", complex_spec, "origin:spacing:extents")->required();
    fn->add_option("--n1", n1, "factor split of the complex (default 1)");
    fn->add_option("--chain", file)->required();
    fn->add_flag("--tensor", tensor, "use the tensor flat norm");
    fn->add_option("--k1", k1, "tensor norm: chain type, first factor");
    fn->add_option("--k2", k2, "tensor norm: chain type, second factor");
    fn->callback([&] {
        ctx.exit_code = cmd_flatnorm(ctx, complex_spec, n1, file, tensor, k1, k2);
    });

    auto* tfn = app.add_subcommand("tflatnorm", "tensor flat norm (flatnorm --tensor)");
    tfn->add_option("--complex", complex_spec)->required();
    tfn->add_option("--n1", n1);
    tfn->add_option("--chain", file)->required();
    tfn->add_option("--k1", k1)->required();
    tfn->add_option("--k2", k2)->required();
    tfn->callback([&] {
        ctx.exit_code = cmd_flatnorm(ctx, complex_spec, n1, file, true, k1, k2);
    });

    auto* cross = app.add_subcommand("crossmass", "mass vs cross-mass bounds");
    cross->add_option("file", file)->required();
    cross->add_option("--n1", n1)->required();
    cross->callback([&] { ctx.exit_code = cmd_crossmass(ctx, file, n1); });

    auto* lab = app.add_subcommand("lab", "worked constructions");
    lab->require_subcommand(1);

    auto* stair = lab->add_subcommand("staircase", "dyadic staircase truncation");
    stair->add_option("--level", level)->required();
    stair->add_flag("--boundary-growth", growth, "include the boundary-mass table");
    stair->callback([&] { ctx.exit_code = cmd_lab_staircase(ctx, level, growth); });

    auto* ce = lab->add_subcommand("counterexample", "non-decomposable tensor cycle");
    ce->add_option("--spec", spec_file, "theta-graph spec JSON (default: built-in)");
    ce->add_option("--legs", legs, "legs of the built-in spec (3 or 4)");
    ce->add_flag("--verify", verify, "exit 2 unless all invariants hold");
    ce->add_option("-o,--out", out, "write the tensor chain JSON here");
    ce->callback([&] {
        ctx.exit_code = cmd_lab_counterexample(ctx, spec_file, legs, verify, out);
    });

    auto* ip = lab->add_subcommand("ip-search", "decomposition lower-bound search");
    ip->add_option("--n", legs, "number of legs")->required();
    ip->add_option("--terms", terms, "maximum outer-product terms")->required();
    ip->add_option("--bound", bound, "entry bound B")->required();
    ip->add_option("--budget", budget, "node budget");
    ip->callback([&] { ctx.exit_code = cmd_lab_ip_search(ctx, legs, terms, bound, budget); });

    auto* repro = app.add_subcommand("reproduce-all", "run the full reproduction suite");
    repro->callback([&] { ctx.exit_code = cmd_reproduce_all(ctx); });

    for (auto* sc : app.get_subcommands({}))
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return ctx.exit_code;
}
