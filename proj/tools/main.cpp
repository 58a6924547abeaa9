#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kvis/bounds.hpp"
#include "kvis/game.hpp"
#include "kvis/graph.hpp"
#include "kvis/grid.hpp"
#include "kvis/trees.hpp"

using namespace kvis;
using nlohmann::json;

namespace {

constexpr int kExitCopWin = 0;
constexpr int kExitRobberWin = 1;
constexpr int kExitError = 2;

void emit_error(const Error& e) {
    json j;
    j["error"] = {{"type", e.kind}, {"message", e.what()}};
    std::cerr << j.dump() << "\n";
}

Graph make_from_flags(const std::string& family, const std::vector<int>& params) {
    return gen_graph(family_from_string(family), params);
}

struct StrategyChoice {
    std::unique_ptr<Strategy> strategy;
    std::optional<Bitset> initial; // for sighting-seeded verification
    Graph graph;                   // the graph the strategy runs on
};

// The registry of constructible, parameter-checked policies.
StrategyChoice build_strategy(const std::string& name, const Graph& g, int k, int cops,
                              const std::vector<int>& sight) {
    StrategyChoice out;
    out.graph = g;
    if (name == "grid-prox") {
        int side = 0;
        while (side * side < g.n) ++side;
        GridProxStrategy sched(side, k, cops);
        out.strategy = sched.as_strategy(g);
        return out;
    }
    if (name == "grid-endgame") {
        if (!sight.empty()) {
            if (sight.size() != 3) throw ParameterError("--sight expects x,y,d");
            Coord c{sight[0], sight[1]};
            out.strategy = grid_endgame_strategy_from_sighting(g, k, cops, c, sight[2]);
            out.initial = endgame_initial_candidates(g, k, c, sight[2]);
        } else {
            out.strategy = grid_endgame_strategy(g, k, cops);
        }
        return out;
    }
    if (name == "tree-radius") {
        out.strategy = tree_radius_strategy(RootedTree::rooted_at_center(g), k);
        return out;
    }
    if (name == "tree-path-guard") {
        out.strategy = tree_path_guard_strategy(RootedTree::rooted_at_center(g), k, cops);
        return out;
    }
    if (name == "tree-zero-vis") {
        if (k != 0) throw ParameterError("tree-zero-vis plays at k = 0");
        out.strategy = tree_zero_visibility_strategy(RootedTree::rooted_at_center(g), cops);
        return out;
    }
    if (name == "spider") {
        out.strategy = spider_strategy(g, k);
        return out;
    }
    if (name == "prox-plus-one") {
        out.strategy = tree_prox_plus_one_strategy(RootedTree::rooted_at_center(g), k,
                                                   default_inner_prox_factory(k), cops);
        return out;
    }
    if (name == "subdivision-schedule") {
        auto built = subdivide_for_prox1(RootedTree::rooted_at_center(g), k);
        out.graph = built.subdivided;
        out.strategy = schedule_strategy(built.schedule, 1, "subdivision-schedule");
        return out;
    }
    throw ParameterError("unknown strategy: " + name +
                         " (known: grid-prox, grid-endgame, tree-radius, tree-path-guard, "
                         "tree-zero-vis, spider, prox-plus-one, subdivision-schedule)");
}

std::string csv_table(int k, int n_min, int n_max, long long round_bound) {
    std::ostringstream out;
    out << "n,k,m,lower,upper,h,sim_rounds,closed_form\n";
    for (int n = n_min; n <= n_max; ++n) {
        long long m = 2LL * k * k + 2 * k + 1;
        auto br = grid_zeta_bracket(n, k);
        std::string h_str = "", rounds_str = "";
        if (k >= 1) {
            int h = grid_prox_cop_bound(n, k);
            GridProxStrategy strat(n, k, h);
            auto sim = simulate_infection(n, k, strat, round_bound);
            if (!sim.cleared)
                throw StructuralError("proximity schedule failed to clear n = " +
                                      std::to_string(n));
            h_str = std::to_string(h);
            rounds_str = std::to_string(sim.rounds);
        }
        out << n << ',' << k << ',' << m << ',' << br.lower << ',' << br.upper << ',' << h_str
            << ',' << rounds_str << ",\"" << br.formula_note << "\"\n";
    }
    return out.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"localization and proximity pursuit games on finite graphs"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a graph family member");
    std::string gen_family, gen_out = "-";
    std::vector<int> gen_params;
    gen->add_option("--family", gen_family,
                    "path|cycle|star|spider|complete_qary_tree|grid")
        ->required();
    gen->add_option("--params", gen_params, "family parameters (spider: leg lengths)")
        ->required();
    gen->add_option("-o,--out", gen_out, "output file (json), - for stdout");

    // solve / exact
    auto* solve = app.add_subcommand("solve", "exact game solving on a graph file");
    std::string solve_file, solve_game_s = "loc";
    int solve_k = 1, solve_m = 1, solve_maxn = 0;
    bool solve_sym = false;
    solve->add_option("file", solve_file)->required();
    solve->add_option("--game", solve_game_s, "loc|prox");
    solve->add_option("--k", solve_k)->required();
    solve->add_option("--cops", solve_m)->required();
    solve->add_option("--max-n", solve_maxn, "override the capacity guard");
    solve->add_flag("--symmetry", solve_sym, "root-level probe dedup under automorphisms");

    auto* exact = app.add_subcommand("exact", "minimal winning cop count");
    std::string exact_file, exact_game_s = "loc";
    int exact_k = 1, exact_maxn = 0;
    exact->add_option("file", exact_file)->required();
    exact->add_option("--game", exact_game_s, "loc|prox");
    exact->add_option("--k", exact_k)->required();
    exact->add_option("--max-n", exact_maxn, "override the capacity guard");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "assemble the bound report");
    std::string bounds_file;
    int bounds_k = 1;
    bool bounds_exact = false;
    bounds->add_option("file", bounds_file)->required();
    bounds->add_option("--k", bounds_k)->required();
    bounds->add_flag("--with-exact", bounds_exact,
                     "also solve the proximity game exactly to pin the sandwich rows");

    // simulate
    auto* sim = app.add_subcommand("simulate", "grid infection clearing");
    int sim_n = 0, sim_k = 1, sim_h = 0;
    long long sim_rounds = 200000;
    sim->add_option("--grid", sim_n, "grid side length")->required();
    sim->add_option("--k", sim_k)->required();
    sim->add_option("--cops", sim_h)->required();
    sim->add_option("--max-rounds", sim_rounds);

    // verify
    auto* verify = app.add_subcommand("verify", "exhaustive strategy verification");
    std::string verify_file, verify_strategy;
    int verify_k = 1, verify_cops = 1, verify_rounds = 100000;
    std::vector<int> verify_sight;
    verify->add_option("file", verify_file)->required();
    verify->add_option("--strategy", verify_strategy)->required();
    verify->add_option("--k", verify_k)->required();
    verify->add_option("--cops", verify_cops)->required();
    verify->add_option("--max-rounds", verify_rounds);
    verify->add_option("--sight", verify_sight,
                       "x,y,d - verify a grid endgame from a first sighting");

    // table
    auto* table = app.add_subcommand("table", "grid value bracket table (CSV)");
    bool table_grid = false;
    int table_k = 1, table_nmin = 0, table_nmax = 0;
    std::string table_format = "csv", table_ppm;
    table->add_flag("--grid", table_grid)->required();
    table->add_option("--k", table_k)->required();
    table->add_option("--n-min", table_nmin)->required();
    table->add_option("--n-max", table_nmax)->required();
    table->add_option("--format", table_format, "csv");
    table->add_option("--dump-ppm", table_ppm,
                      "prefix for tiling/infection snapshots (PPM images)");

    // export
    auto* exp = app.add_subcommand("export", "re-serialize a graph deterministically");
    std::string exp_file, exp_format = "json", exp_out = "-";
    exp->add_option("file", exp_file)->required();
    exp->add_option("--format", exp_format, "json|edgelist|dot");
    exp->add_option("-o,--out", exp_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            Graph g = make_from_flags(gen_family, gen_params);
            save_graph_file(g, gen_out, "json");
            return 0;
        }
        if (*solve) {
            Graph g = load_graph_file(solve_file);
            GameConfig cfg;
            cfg.mode = game_mode_from_string(solve_game_s);
            cfg.k = solve_k;
            cfg.m = solve_m;
            SolveOptions opt;
            opt.max_n_override = solve_maxn;
            opt.symmetry = solve_sym;
            auto res = solve_game(g, cfg, opt);
            std::cout << solve_result_to_json(res, cfg) << "\n";
            return res.cop_win ? kExitCopWin : kExitRobberWin;
        }
        if (*exact) {
            Graph g = load_graph_file(exact_file);
            SolveOptions opt;
            opt.max_n_override = exact_maxn;
            int m = exact_number(g, exact_k, game_mode_from_string(exact_game_s), opt);
            std::cout << m << "\n";
            return 0;
        }
        if (*bounds) {
            Graph g = load_graph_file(bounds_file);
            std::optional<int> prox;
            if (bounds_exact) prox = exact_number(g, bounds_k, GameMode::proximity);
            std::cout << bound_report_to_json(bound_report(g, bounds_k, prox)) << "\n";
            return 0;
        }
        if (*sim) {
            GridProxStrategy strat(sim_n, sim_k, sim_h);
            auto res = simulate_infection(sim_n, sim_k, strat, sim_rounds);
            json j;
            j["n"] = sim_n;
            j["k"] = sim_k;
            j["cops"] = sim_h;
            j["cleared"] = res.cleared;
            j["rounds"] = res.rounds;
            j["trace"] = res.trace;
            std::cout << j.dump() << "\n";
            return res.cleared ? kExitCopWin : kExitRobberWin;
        }
        if (*verify) {
            Graph g = load_graph_file(verify_file);
            auto choice = build_strategy(verify_strategy, g, verify_k, verify_cops, verify_sight);
            GameConfig cfg;
            cfg.mode = choice.strategy->mode();
            cfg.k = verify_k;
            cfg.m = verify_cops;
            cfg.round_bound = verify_rounds;
            auto res = verify_strategy(choice.graph, cfg, *choice.strategy,
                                       choice.initial ? &*choice.initial : nullptr);
            std::cout << verification_to_json(res, choice.strategy->name()) << "\n";
            return res.captured ? kExitCopWin : kExitRobberWin;
        }
        if (*table) {
            if (table_format != "csv") throw ParameterError("only csv output is supported");
            std::cout << csv_table(table_k, table_nmin, table_nmax, 200000);
            if (!table_ppm.empty()) {
                dump_tiling_ppm(table_nmax, std::max(1, table_k), table_ppm + "_tiling.ppm");
                if (table_k >= 1)
                    dump_infection_ppm(table_nmax, table_k, grid_prox_cop_bound(table_nmax, table_k),
                                       std::max(1, grid_zeta_bracket(table_nmax, table_k).upper),
                                       table_ppm + "_infection.ppm");
            }
            return 0;
        }
        if (*exp) {
            Graph g = load_graph_file(exp_file);
            save_graph_file(g, exp_out, exp_format);
            return 0;
        }
    } catch (const Error& e) {
        emit_error(e);
        return kExitError;
    } catch (const std::exception& e) {
        emit_error(IoError(e.what()));
        return kExitError;
    }
    return kExitError;
}
