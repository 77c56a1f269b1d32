#include "overlap/cli.hpp"

#include "overlap/dual_triangulation.hpp"
#include "overlap/instance_io.hpp"
#include "overlap/minimax_game.hpp"
#include "overlap/report.hpp"
#include "overlap/selfcheck.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

namespace overlap {

namespace {

struct BadInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::uint64_t seed = 0;
    std::string p_mode = "file";
    std::string gen_p = "uniform";
    std::string out_path;
    std::string instance_path;
    std::string mesh_start = "1/4";
    std::string triangulation_out;
    std::size_t gen_n = 0;
    std::size_t max_n = 5;
    bool timing = false;
    bool no_prune = false;
};

struct Loaded {
    AffineInstance instance;
    std::string distribution;
};

Loaded load(const Options& o)
{
    InstanceFile file;
    try {
        file = read_instance_file(o.instance_path);
    } catch (const InstanceFormatError& e) {
        throw BadInput(e.what());
    }
    std::string label = o.p_mode;
    if (o.p_mode == "uniform") {
        file.weights.reset();
    } else if (o.p_mode == "random") {
        file.weights = random_weights(file.points.size(), o.seed);
    } else if (!file.weights) {
        label = "uniform";
    }
    try {
        return {file.to_instance(), label};
    } catch (const std::invalid_argument& e) {
        throw BadInput(e.what());
    }
}

void emit(const Options& o, const std::string& text, std::ostream& out)
{
    if (o.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw BadInput("cannot write " + o.out_path);
    f << text;
}

using Clock = std::chrono::steady_clock;

void add_timing(Report& r, const Options& o, Clock::time_point start)
{
    if (!o.timing) return;
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
    r.add("elapsed_ms", static_cast<std::int64_t>(ms));
}

int cmd_gen(const Options& o, std::ostream& out)
{
    const WeightMode mode = o.gen_p == "random" ? WeightMode::Random : WeightMode::Uniform;
    emit(o, write_instance(generate_instance(o.gen_n, o.seed, mode)), out);
    return kExitOk;
}

int cmd_overlap(const Options& o, std::ostream& out)
{
    const auto start = Clock::now();
    const Loaded in = load(o);
    const AffineInstance& inst = in.instance;
    const DepthCertificate cert = find_overlap_point(inst);
    const OverlapBoundCheck check = check_overlap_bounds(cert, inst);

    Report r;
    r.add("command", "overlap");
    r.add("n", inst.size());
    r.add("distribution", in.distribution);
    r.add("point_x", cert.point.x);
    r.add("point_y", cert.point.y);
    r.add("count", cert.count);
    r.add("triangles", choose(inst.size(), 3));
    r.add("fraction", check.fraction);
    r.add("weighted_depth", cert.weighted);
    r.add("uniform_constant", check.uniform_constant);
    r.add("uniform_bound_applicable", check.uniform_applicable);
    r.add("uniform_bound_holds", check.uniform_holds);
    r.add("weighted_constant", check.weighted_constant);
    r.add("weighted_bound_holds", check.weighted_holds);
    r.add("status", check.holds() ? "pass" : "fail");
    add_timing(r, o, start);
    emit(o, r.str(), out);
    return check.holds() ? kExitOk : kExitPropertyFailure;
}

int cmd_folding(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto start = Clock::now();
    const Loaded in = load(o);
    Rational mesh_start;
    try {
        mesh_start = parse_rational(o.mesh_start);
    } catch (const std::invalid_argument& e) {
        throw BadInput(std::string("--mesh-start: ") + e.what());
    }
    if (mesh_start <= 0) throw BadInput("--mesh-start must be positive");

    const AffineInstance inst = scale_into_half_ball(in.instance);
    RefinementResult refined = [&] {
        try {
            return refine_until_valid(inst, o.seed, mesh_start);
        } catch (const RefinementExhausted& e) {
            err << "error: " << e.what() << '\n';
            throw;
        }
    }();
    const DualTriangulation& dual = refined.triangulation;
    const IntersectionMap i = intersection_map(inst, dual);
    const DualityReport duality = check_duality(inst, dual, i);
    const bool fundamental = fundamental_class_check(i, dual);

    Report r;
    r.add("command", "folding");
    r.add("n", inst.size());
    r.add("distribution", in.distribution);
    r.add("seed", o.seed);
    r.add("mesh_start", mesh_start);
    r.add("rescaled", !(inst.points() == in.instance.points()));
    r.add("rounds", refined.rounds);
    r.add("mesh", dual.mesh);
    r.add("dual_vertices", dual.vertices.size());
    r.add("dual_edges", dual.edges.size());
    r.add("dual_triangles", dual.triangles.size());
    r.add("anchor", static_cast<std::uint64_t>(dual.anchor));
    r.add("well_behaved", refined.certificate.valid());
    for (Vertex v = 0; v < inst.size(); ++v)
        r.add("t_star", std::to_string(v) + " " + std::to_string(*refined.certificate.containing_triangle[v]));
    r.add("duality_failing_edges", duality.failing_edges.size());
    r.add("duality_failing_triangles", duality.failing_triangles.size());
    r.add("duality_holds", duality.holds());
    r.add("fundamental_class", fundamental);

    bool ok = duality.holds() && fundamental;
    if (ok) {
        const FoldingAttempt f = construct_folding_attempt(inst, dual, i, inst.distribution());
        bool vanishes_outside = true;
        for (std::size_t e = 0; e < dual.edges.size(); ++e)
            if (!dual.edge_meets_half_ball[e] && !f.h1[e].is_zero()) vanishes_outside = false;
        bool identity_off_defects = true;
        for (std::size_t t = 0, d = 0; t < dual.triangles.size(); ++t) {
            if (d < f.defects.size() && f.defects[d] == t) {
                ++d;
                continue;
            }
            const auto& es = dual.triangles[t];
            if (!(f.h1[es[0]] + f.h1[es[1]] + f.h1[es[2]] == i.i2[t])) identity_off_defects = false;
        }
        r.add("defects", f.defects.size());
        r.add("defect_parity", f.defects.size() % 2 == 1 ? "odd" : "even");
        for (DualIndex t : f.defects) r.add("defect", static_cast<std::uint64_t>(t));
        r.add("h1_vanishes_outside_half_ball", vanishes_outside);
        r.add("folding_identity_off_defects", identity_off_defects);
        r.add("max_p_intersection_vertex", f.weights.max_intersection_vertex);
        r.add("max_p_h0", f.weights.max_h0);
        r.add("max_p_h1", f.weights.max_h1);
        r.add("max_p_a", f.weights.max_a);
        r.add("h0_bound_holds", f.weights.h0_bound_holds);
        r.add("h1_bound_holds", f.weights.h1_bound_holds);
        r.add("hypothesis_edges", f.weights.hypothesis_edges);
        r.add("hypothesis_bound_holds", f.weights.hypothesis_bound_holds);
        ok = f.defects.size() % 2 == 1 && vanishes_outside && identity_off_defects && f.weights.h0_bound_holds &&
             f.weights.h1_bound_holds && f.weights.hypothesis_bound_holds;
    }
    r.add("status", ok ? "pass" : "fail");
    add_timing(r, o, start);

    if (!o.triangulation_out.empty()) {
        std::ofstream t(o.triangulation_out, std::ios::binary);
        if (!t) throw BadInput("cannot write " + o.triangulation_out);
        write_triangulation(t, dual);
    }
    emit(o, r.str(), out);
    return ok ? kExitOk : kExitPropertyFailure;
}

int cmd_game(const Options& o, std::ostream& out)
{
    const auto start = Clock::now();
    const Loaded in = load(o);
    const GameMatrix g = build_game(in.instance, !o.no_prune);
    const GameSolution s = solve_game(g);

    Report r;
    r.add("command", "game");
    r.add("n", g.vertex_count());
    r.add("candidates", g.candidate_count);
    r.add("rows", g.rows.size());
    r.add("dominated_removed", g.dominated_removed);
    r.add("pivots", s.pivots);
    r.add("value", s.value);
    for (std::size_t k = 0; k < g.rows.size(); ++k) {
        if (s.mu[k] == 0) continue;
        r.add("mu", to_string(g.rows[k].point.x) + " " + to_string(g.rows[k].point.y) + " " + to_string(s.mu[k]));
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) r.add("p_star", std::to_string(v) + " " + to_string(s.p_star[v]));

    bool ok = true;
    try {
        const GapReport gap = verify_duality_gap(g, s);
        r.add("min_column", gap.min_column);
        r.add("max_row", gap.max_row);
        r.add("gap", gap.max_row - gap.min_column);
        r.add("depth_at_p_star", gap.depth_at_p_star);
        r.add("value_bound", gap.value_bound);
        r.add("value_bound_holds", s.value >= gap.value_bound);
    } catch (const GapDetected& e) {
        r.add("gap_error", e.what());
        ok = false;
    }
    r.add("status", ok ? "pass" : "fail");
    add_timing(r, o, start);
    emit(o, r.str(), out);
    return ok ? kExitOk : kExitPropertyFailure;
}

int cmd_selfcheck(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto start = Clock::now();
    const SelfcheckResult res = run_selfcheck(o.max_n, o.seed);
    Report r;
    r.add("command", "selfcheck");
    r.add("max_n", o.max_n);
    r.add("seed", o.seed);
    for (const auto& item : res.items) {
        std::string line = item.name + " " + (item.passed ? "pass" : "FAIL") + " " + std::to_string(item.cases);
        if (!item.passed) line += " " + item.detail;
        r.add("check", line);
    }
    r.add("status", res.passed() ? "pass" : "fail");
    add_timing(r, o, start);
    emit(o, r.str(), out);
    if (auto name = res.first_failure()) {
        err << "selfcheck failed: " << *name << '\n';
        return kExitPropertyFailure;
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Exact overlap, dual triangulation and minimax computations for point sets in the plane",
                 "overlap"};
    app.require_subcommand(1);

    const std::vector<std::string> p_modes{"uniform", "random", "file"};
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", o.seed, "RNG seed");
        sub->add_option("--out", o.out_path, "write the output to this file instead of stdout");
    };
    auto add_p = [&](CLI::App* sub) {
        sub->add_option("--p", o.p_mode, "vertex distribution: uniform, random (from --seed) or file (default)")
            ->check(CLI::IsMember(p_modes));
    };

    auto* gen = app.add_subcommand("gen", "generate a random instance in general position");
    gen->add_option("n", o.gen_n, "number of points")->required()->check(CLI::Range(std::size_t{3}, std::size_t{100000}));
    gen->add_option("--p", o.gen_p, "weights: uniform (default) or random")
        ->check(CLI::IsMember(std::vector<std::string>{"uniform", "random"}));
    add_common(gen);

    auto* overlap = app.add_subcommand("overlap", "find a point in the most triangle images");
    overlap->add_option("instance", o.instance_path, "instance file")->required();
    overlap->add_flag("--timing", o.timing, "append elapsed time");
    add_common(overlap);
    add_p(overlap);

    auto* folding = app.add_subcommand("folding", "dual triangulation, duality checks and folding defects");
    folding->add_option("instance", o.instance_path, "instance file")->required();
    folding->add_option("--mesh-start", o.mesh_start, "initial mesh size as a rational");
    folding->add_option("--triangulation-out", o.triangulation_out, "export the dual triangulation");
    folding->add_flag("--timing", o.timing, "append elapsed time");
    add_common(folding);
    add_p(folding);

    auto* game = app.add_subcommand("game", "solve the point/vertex zero-sum game exactly");
    game->add_option("instance", o.instance_path, "instance file")->required();
    game->add_flag("--no-prune", o.no_prune, "keep dominated rows");
    game->add_flag("--timing", o.timing, "append elapsed time");
    add_common(game);
    add_p(game);

    auto* selfcheck = app.add_subcommand("selfcheck", "exhaustive chain-calculus and expansion checks");
    selfcheck->add_option("max_n", o.max_n, "largest complex size (3..6)")->check(CLI::Range(std::size_t{3}, std::size_t{6}));
    selfcheck->add_flag("--timing", o.timing, "append elapsed time");
    add_common(selfcheck);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (gen->parsed()) return cmd_gen(o, out);
        if (overlap->parsed()) return cmd_overlap(o, out);
        if (folding->parsed()) return cmd_folding(o, out, err);
        if (game->parsed()) return cmd_game(o, out);
        if (selfcheck->parsed()) return cmd_selfcheck(o, out, err);
    } catch (const BadInput& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const RefinementExhausted&) {
        return kExitRefinementExhausted;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitPropertyFailure;
    }
    return kExitBadInput;
}

}  // namespace overlap
