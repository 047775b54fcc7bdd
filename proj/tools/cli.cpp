#include <CLI11.hpp>
#include <omp.h>

#include <fstream>
#include <iostream>

#include "nlgf/acceptance.hpp"
#include "nlgf/serial.hpp"
#include "nlgf/solvers.hpp"

using namespace nlgf;

namespace {

// exit codes: 0 pass, 1 check failure, 2 usage, 3 capacity
constexpr int kExitCheck = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

Json error_doc(const std::string& kind, const std::string& message) {
    return Json{{"error", kind}, {"message", message}};
}

std::string read_all(std::istream& is) {
    return std::string(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
}

GamePtr load_game_arg(const std::string& in) {
    if (in.empty() || in == "-") return game_from_json(Json::parse(read_all(std::cin)));
    // builtin names resolve directly; otherwise treat as a path
    static const std::set<std::string> names{"accept", "reject", "magic-square"};
    if (names.count(in))
        return game_from_json(Json{{"type", "library"}, {"name", in}, {"params", Json::array()}});
    std::ifstream f(in);
    if (!f) throw std::invalid_argument("cannot open " + in);
    return game_from_json(Json::parse(read_all(f)));
}

void emit(const Json& doc, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream f(out);
        f << doc.dump(2) << "\n";
    }
}

GamePtr build_named_game(const std::string& name, const std::vector<int64_t>& params) {
    Json j;
    if (name == "accept" || name == "reject" || name == "magic-square") {
        j = Json{{"type", "library"}, {"name", name}, {"params", Json::array()}};
    } else if (name == "pauli-basis" || name == "cl-identity") {
        j = Json{{"type", "library"}, {"name", name}, {"params", params}};
    } else if (name == "sim-lowdeg" || name == "lowdeg") {
        std::vector<int64_t> p = params;
        if (name == "lowdeg") p.push_back(1);
        j = Json{{"type", "library"}, {"name", "sim-lowdeg"}, {"params", p}};
    } else {
        throw std::invalid_argument("unknown game name: " + name);
    }
    return game_from_json(j);
}

Strategy build_named_strategy(const std::string& name, const GamePtr& game,
                              const std::vector<int64_t>& params) {
    if (name == "magic-square") return magic_square_strategy();
    if (name == "pauli-basis") return pauli_basis_strategy(int(params.at(0)));
    if (name == "lowdeg-const") {
        // evaluate the constant-zero polynomial family
        IdPoly f(game->field, int(game->params.at(1)));
        std::vector<IdPoly> fs(size_t(game->params.at(3)), f);
        return sldt_classical_strategy(*game, fs);
    }
    throw std::invalid_argument("unknown strategy name: " + name);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale toolkit for two-prover games"};
    app.require_subcommand(1);

    uint64_t seed = 0;
    int threads = 0;
    double tolerance = 1e-9;
    app.add_option("--seed", seed, "random seed (default 0)");
    app.add_option("--threads", threads, "worker cap (0 = all)");
    app.add_option("--tolerance", tolerance, "numeric tolerance (default 1e-9)");

    // --- game -----------------------------------------------------------------
    auto* game = app.add_subcommand("game", "build, transform, sample, evaluate games");
    game->require_subcommand(1);
    game->fallthrough();

    std::string g_name, g_in, g_out, g_op, g_mode = "classical", g_strategy_path;
    std::vector<int64_t> g_params;
    int g_r = 2, g_n = 0, g_dim = 2, g_iters = 4, g_restarts = 20;

    auto* gb = game->add_subcommand("build", "construct a library game");
    gb->fallthrough();
    gb->add_option("name", g_name)->required();
    gb->add_option("params", g_params);
    gb->add_option("--out", g_out);

    auto* gt = game->add_subcommand("transform", "apply a transformation");
    gt->fallthrough();
    gt->add_option("--op", g_op)->required()->check(
        CLI::IsMember({"oracularize", "anchor", "repeat", "detype"}));
    gt->add_option("--r", g_r);
    gt->add_option("--in", g_in);
    gt->add_option("--out", g_out);

    auto* gs = game->add_subcommand("sample", "draw question pairs");
    gs->fallthrough();
    int64_t g_nsamples = 10;
    gs->add_option("--n", g_nsamples);
    gs->add_option("--in", g_in);
    gs->add_option("--out", g_out);

    auto* ge = game->add_subcommand("enumerate", "exact question-pair law");
    ge->fallthrough();
    ge->add_option("--in", g_in);
    ge->add_option("--out", g_out);

    auto* gv = game->add_subcommand("value", "classical or heuristic quantum value");
    gv->fallthrough();
    gv->add_option("--mode", g_mode)->check(CLI::IsMember({"classical", "quantum-lb", "strategy"}));
    gv->add_option("--in", g_in);
    gv->add_option("--strategy", g_strategy_path);
    gv->add_option("--dim", g_dim);
    gv->add_option("--iters", g_iters);
    gv->add_option("--restarts", g_restarts);
    gv->add_option("--out", g_out);

    // --- strategy ----------------------------------------------------------------
    auto* strat = app.add_subcommand("strategy", "build and evaluate strategies");
    strat->require_subcommand(1);
    strat->fallthrough();
    std::string s_name, s_game = "", s_in, s_out;
    std::vector<int64_t> s_params;

    auto* sb = strat->add_subcommand("build", "construct an honest strategy");
    sb->fallthrough();
    sb->add_option("name", s_name)->required();
    sb->add_option("params", s_params);
    sb->add_option("--game", s_game);
    sb->add_option("--out", s_out)->required();

    auto* se = strat->add_subcommand("eval", "value and synchronicity on a game");
    se->fallthrough();
    se->add_option("--game", s_game)->required();
    se->add_option("--strategy", s_in)->required();

    auto* sc = strat->add_subcommand("check-oracularizable", "max commutator norm");
    sc->fallthrough();
    sc->add_option("--game", s_game)->required();
    sc->add_option("--strategy", s_in)->required();

    // --- suite ---------------------------------------------------------------------
    auto* suite = app.add_subcommand("suite", "acceptance checks");
    suite->fallthrough();
    auto* sr = suite->add_subcommand("run", "run a suite");
    sr->fallthrough();
    std::string suite_name = "all";
    sr->add_option("--suite", suite_name)
        ->check(CLI::IsMember({"field", "cl", "poly", "games", "quant", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (threads > 0) omp_set_num_threads(threads);

    try {
        if (gb->parsed()) {
            emit(game_to_json(*build_named_game(g_name, g_params)), g_out);
        } else if (gt->parsed()) {
            GamePtr in = load_game_arg(g_in);
            GamePtr out;
            if (g_op == "oracularize") out = std::make_shared<Game>(oracularize(in));
            if (g_op == "anchor") out = std::make_shared<Game>(anchor(in));
            if (g_op == "repeat") out = std::make_shared<Game>(repeat_game(in, g_r));
            if (g_op == "detype") out = std::make_shared<Game>(detype_game(in));
            emit(game_to_json(*out), g_out);
        } else if (gs->parsed()) {
            GamePtr g = load_game_arg(g_in);
            Rng rng(seed);
            std::ostream* os = &std::cout;
            std::ofstream f;
            if (!g_out.empty() && g_out != "-") {
                f.open(g_out);
                os = &f;
            }
            for (int64_t i = 0; i < g_nsamples; ++i) {
                auto [x, y] = g->sample(rng);
                Json line{{"x", question_to_json(x)}, {"y", question_to_json(y)}};
                (*os) << line.dump() << "\n";
            }
        } else if (ge->parsed()) {
            GamePtr g = load_game_arg(g_in);
            Json rows = Json::array();
            for (const auto& wp : g->pairs())
                rows.push_back(Json{{"x", question_to_json(wp.x)},
                                    {"y", question_to_json(wp.y)},
                                    {"p", wp.w.str()}});
            emit(Json{{"fingerprint", game_fingerprint(*g)}, {"pairs", rows}}, g_out);
        } else if (gv->parsed()) {
            GamePtr g = load_game_arg(g_in);
            if (g_mode == "classical") {
                auto rep = classical_value_exact(*g);
                emit(report_to_json(rep), g_out);
                std::cout << rep.value_exact.str() << "\n";
            } else if (g_mode == "quantum-lb") {
                LowerBoundOptions opt;
                opt.dim = g_dim;
                opt.iters = g_iters;
                opt.restarts = g_restarts;
                opt.seed = seed;
                opt.threads = threads;
                auto rep = quantum_lower_bound(*g, opt);
                emit(report_to_json(rep), g_out);
            } else {
                Strategy s = load_strategy(g_strategy_path);
                double v = eval_value(*g, s, {threads, false});
                emit(Json{{"value", v}}, g_out);
                if (std::abs(v - 1.0) > tolerance && g->synchronous) {
                    // informative only; success is not required here
                }
            }
        } else if (sb->parsed()) {
            GamePtr g;
            if (!s_game.empty()) g = load_game_arg(s_game);
            if (s_name == "magic-square") {
                save_strategy(magic_square_strategy(), s_out);
            } else if (s_name == "pauli-basis") {
                save_strategy(pauli_basis_strategy(int(s_params.at(0))), s_out);
            } else {
                if (!g) throw std::invalid_argument("strategy build: --game required");
                save_strategy(build_named_strategy(s_name, g, s_params), s_out);
            }
        } else if (se->parsed()) {
            GamePtr g = load_game_arg(s_game);
            Strategy st = load_strategy(s_in);
            double v = eval_value(*g, st, {threads, false});
            double ds = delta_sync(*g, st);
            std::cout << Json{{"value", v}, {"delta_sync", ds}}.dump(2) << "\n";
        } else if (sc->parsed()) {
            GamePtr g = load_game_arg(s_game);
            Strategy st = load_strategy(s_in);
            double worst = max_commutator(*g, st);
            bool ok = worst <= tolerance;
            std::cout << Json{{"max_commutator", worst}, {"oracularizable", ok}}.dump(2) << "\n";
        } else if (sr->parsed()) {
            auto results = run_suite(suite_name, seed);
            bool all = true;
            std::printf("%-46s %-6s %8s  %s\n", "criterion", "result", "seconds", "detail");
            for (const auto& r : results) {
                std::printf("%-46s %-6s %8.2f  %s\n", r.name.c_str(), r.pass ? "pass" : "FAIL",
                            r.seconds, r.detail.c_str());
                all = all && r.pass;
            }
            if (!all) return kExitCheck;
        }
    } catch (const CapacityError& e) {
        std::cerr << error_doc("capacity", e.what()).dump() << "\n";
        return kExitCapacity;
    } catch (const std::invalid_argument& e) {
        std::cerr << error_doc("usage", e.what()).dump() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << error_doc("error", e.what()).dump() << "\n";
        return kExitCheck;
    }
    return 0;
}
