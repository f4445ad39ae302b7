#include "diffmc/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "diffmc/checks.hpp"
#include "diffmc/difflocal.hpp"
#include "diffmc/formula.hpp"
#include "diffmc/games.hpp"
#include "diffmc/graph.hpp"
#include "diffmc/mc.hpp"
#include "diffmc/relations.hpp"

namespace diffmc::cli {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

LabeledGraph load_graph(const std::string& path) {
    return LabeledGraph::from_json(nlohmann::json::parse(slurp(path)));
}

FormulaPtr load_formula(const std::string& path) { return parse_formula(slurp(path)); }

std::vector<int> parse_tuple(const std::string& text) {
    std::vector<int> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        out.push_back(std::stoi(item, &pos));
        if (pos != item.size()) throw InputError("bad tuple entry \"" + item + "\"");
    }
    return out;
}

void emit(std::ostream& out, const nlohmann::json& j, bool pretty) {
    out << (pretty ? j.dump(2) : j.dump()) << "\n";
}

struct GenArgs {
    std::string kind;
    std::vector<std::string> params;
    bool pretty = false;
};

long to_long(const std::string& s) {
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw InputError("bad integer parameter \"" + s + "\"");
    return v;
}

int cmd_gen(const GenArgs& args, std::ostream& out) {
    if (args.kind == "all_graphs_up_to") {
        if (args.params.empty()) throw InputError("all_graphs_up_to needs n");
        for_each_graph_up_to(static_cast<int>(to_long(args.params[0])),
                             [&](const LabeledGraph& g) { emit(out, g.to_json(), false); });
        return 0;
    }
    if (args.kind == "complement_of") {
        if (args.params.empty()) throw InputError("complement_of needs an inner generator");
        std::vector<long> inner;
        for (size_t i = 1; i < args.params.size(); ++i) inner.push_back(to_long(args.params[i]));
        emit(out, complement_of(generate(args.params[0], inner)).to_json(), args.pretty);
        return 0;
    }
    std::vector<long> params;
    for (const auto& p : args.params) params.push_back(to_long(p));
    emit(out, generate(args.kind, params).to_json(), args.pretty);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"differential-game model checking toolkit"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate a graph as canonical JSON");
    gen_cmd->add_option("kind", gen.kind,
                        "path|cycle|complete|half_graph|ladder|erdos_renyi|"
                        "complement_of|all_graphs_up_to")
        ->required();
    gen_cmd->add_option("params", gen.params, "generator parameters");
    gen_cmd->add_flag("--pretty", gen.pretty, "indent output");

    struct {
        std::string graph, formula, engine = "difftree";
        int threads = 1;
        bool pretty = false;
    } mc;
    auto* mc_cmd = app.add_subcommand("mc", "model-check a sentence on a graph");
    mc_cmd->add_option("--graph", mc.graph, "graph .graph.json file")->required();
    mc_cmd->add_option("--formula", mc.formula, "formula .fo file")->required();
    mc_cmd->add_option("--engine", mc.engine, "brute|difftree");
    mc_cmd->add_option("--threads", mc.threads, "worker threads");
    mc_cmd->add_flag("--pretty", mc.pretty, "indent output");

    struct {
        std::string graph, kind = "d", a, b;
        int rounds = 1;
        bool trace = false;
        bool pretty = false;
    } game;
    auto* game_cmd = app.add_subcommand("game", "solve a game position");
    game_cmd->add_option("--graph", game.graph, "graph file")->required();
    game_cmd->add_option("--kind", game.kind, "ef|sd|d");
    game_cmd->add_option("--rounds", game.rounds, "rounds")->required();
    game_cmd->add_option("--a", game.a, "a-tuple, e.g. 0,2")->required();
    game_cmd->add_option("--b", game.b, "b-tuple")->required();
    game_cmd->add_flag("--trace", game.trace, "include an optimal-play transcript");
    game_cmd->add_flag("--pretty", game.pretty, "indent output");

    struct {
        std::string graph, kind = "d";
        int rounds = 1;
        int threads = 1;
        bool pretty = false;
    } rel;
    auto* rel_cmd = app.add_subcommand("relation", "dump a vertex-pair relation");
    rel_cmd->add_option("--graph", rel.graph, "graph file")->required();
    rel_cmd->add_option("--kind", rel.kind, "d|sd|ef|fo_type");
    rel_cmd->add_option("--rounds", rel.rounds, "rounds / rank")->required();
    rel_cmd->add_option("--threads", rel.threads, "worker threads");
    rel_cmd->add_flag("--pretty", rel.pretty, "indent output");

    struct {
        std::string graph, coloring, preset;
        int r = 1;
        bool pretty = false;
    } dn;
    auto* dn_cmd = app.add_subcommand("dn", "differential-neighborhood census");
    dn_cmd->add_option("--graph", dn.graph, "graph file")->required();
    dn_cmd->add_option("--r", dn.r, "neighborhood radius / game rounds")->required();
    dn_cmd->add_option("--coloring", dn.coloring, "coloring JSON file");
    dn_cmd->add_option("--preset", dn.preset, "uniform|atomic");
    dn_cmd->add_flag("--pretty", dn.pretty, "indent output");

    struct {
        std::string suite;
        int max_n = -1, max_m = -1, max_r = -1, count = -1, threads = 1;
        std::uint64_t seed = 0;
        bool pretty = false;
    } check;
    auto* check_cmd = app.add_subcommand("check", "run a named property suite");
    check_cmd->add_option("suite", check.suite,
                          "lemma51|lemma62|lemma61|lemma65|xi_agreement|oracle_equiv|"
                          "dn_locality|monotonicity")
        ->required();
    check_cmd->add_option("--max-n", check.max_n, "graph size bound");
    check_cmd->add_option("--max-m", check.max_m, "round / rank bound");
    check_cmd->add_option("--max-r", check.max_r, "DN radius bound");
    check_cmd->add_option("--seed", check.seed, "random-graph seed");
    check_cmd->add_option("--count", check.count, "random-graph count");
    check_cmd->add_option("--threads", check.threads, "worker threads");
    check_cmd->add_flag("--pretty", check.pretty, "indent output");

    std::vector<const char*> argv;
    std::string prog = "diffmc";
    argv.push_back(prog.c_str());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (gen_cmd->parsed()) return cmd_gen(gen, out);

        if (mc_cmd->parsed()) {
            LabeledGraph g = load_graph(mc.graph);
            FormulaPtr f = load_formula(mc.formula);
            ModelCheckOptions options;
            options.engine = engine_from_string(mc.engine);
            options.threads = mc.threads;
            emit(out, model_check(g, *f, options).diagnostics, mc.pretty);
            return 0;
        }

        if (game_cmd->parsed()) {
            LabeledGraph g = load_graph(game.graph);
            auto a = parse_tuple(game.a), b = parse_tuple(game.b);
            GameKind kind;
            if (game.kind == "ef") kind = GameKind::EF;
            else if (game.kind == "sd") kind = GameKind::SD;
            else if (game.kind == "d") kind = GameKind::D;
            else throw InputError("unknown game kind \"" + game.kind + "\"");

            Winner w;
            switch (kind) {
                case GameKind::EF: w = ef_winner(g, a, g, b, game.rounds); break;
                case GameKind::SD: w = sd_winner(g, a, b, game.rounds); break;
                case GameKind::D: w = d_winner(g, a, b, game.rounds); break;
            }
            nlohmann::json j{{"kind", game.kind}, {"rounds", game.rounds}, {"winner", to_string(w)}};
            if (game.trace) j["transcript"] = game_trace(kind, g, a, b, game.rounds).to_json();
            emit(out, j, game.pretty);
            return 0;
        }

        if (rel_cmd->parsed()) {
            LabeledGraph g = load_graph(rel.graph);
            RelationGraph r =
                relation_graph(g, relation_kind_from_string(rel.kind), rel.rounds, rel.threads);
            emit(out, r.to_json(), rel.pretty);
            return 0;
        }

        if (dn_cmd->parsed()) {
            LabeledGraph g = load_graph(dn.graph);
            if (!dn.coloring.empty()) {
                g = apply_coloring(g, Coloring::from_json(nlohmann::json::parse(slurp(dn.coloring))));
            } else if (dn.preset == "uniform") {
                g = apply_coloring(g, uniform_coloring(g));
            } else if (dn.preset == "atomic") {
                g = apply_coloring(g, atomic_type_coloring(g));
            } else if (!dn.preset.empty()) {
                throw InputError("unknown coloring preset \"" + dn.preset + "\"");
            }
            emit(out, dn_census(g, dn.r).to_json(), dn.pretty);
            return 0;
        }

        if (check_cmd->parsed()) {
            checks::SuiteOptions options;
            options.max_n = check.max_n;
            options.max_m = check.max_m;
            options.max_r = check.max_r;
            options.seed = check.seed;
            options.random_count = check.count;
            options.threads = check.threads;
            checks::CheckSuiteResult result = checks::run_suite(check.suite, options);
            emit(out, result.to_json(), check.pretty);
            return result.pass() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace diffmc::cli
