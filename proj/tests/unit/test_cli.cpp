#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "diffmc/cli.hpp"
#include "diffmc/graph.hpp"
#include "support/schema_check.hpp"

using namespace diffmc;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int exit_code;
    std::string out;
    std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempFile {
public:
    TempFile(const std::string& name, const std::string& content) {
        path_ = fs::temp_directory_path() / ("diffmc_test_" + name);
        std::ofstream f(path_);
        f << content;
    }
    ~TempFile() { std::error_code ec; fs::remove(path_, ec); }
    std::string path() const { return path_.string(); }

private:
    fs::path path_;
};

}  // namespace

TEST_CASE("cli gen") {
    CliRun r = run_cli({"gen", "path", "4"});
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(diffmc::testing::check_graph_json(j).empty());
    CHECK(LabeledGraph::from_json(j) == make_path(4));

    CHECK(run_cli({"gen", "moebius", "4"}).exit_code == 2);
    CHECK(run_cli({"gen", "path"}).exit_code == 2);

    CliRun comp = run_cli({"gen", "complement_of", "path", "3"});
    CHECK(comp.exit_code == 0);
    CHECK(LabeledGraph::from_json(nlohmann::json::parse(comp.out)) ==
          complement_of(make_path(3)));

    CliRun stream = run_cli({"gen", "all_graphs_up_to", "3"});
    CHECK(stream.exit_code == 0);
    int lines = 0;
    std::istringstream in(stream.out);
    for (std::string line; std::getline(in, line);) {
        CHECK(diffmc::testing::check_graph_json(nlohmann::json::parse(line)).empty());
        ++lines;
    }
    CHECK(lines == 1 + 2 + 8);

    SUBCASE("deterministic output") {
        CHECK(run_cli({"gen", "erdos_renyi", "6", "9"}).out ==
              run_cli({"gen", "erdos_renyi", "6", "9"}).out);
    }
}

TEST_CASE("cli mc") {
    TempFile graph("p3.graph.json", make_path(3).to_json().dump());
    TempFile formula("iso.fo", "exists x. forall y. !E(x,y)\n");
    for (const char* engine : {"brute", "difftree"}) {
        CliRun r = run_cli({"mc", "--graph", graph.path(), "--formula", formula.path(),
                            "--engine", engine});
        CHECK(r.exit_code == 0);
        auto j = nlohmann::json::parse(r.out);
        CHECK(diffmc::testing::check_diagnostics_json(j).empty());
        CHECK(j["verdict"] == false);  // P3 has no isolated vertex
        CHECK(j["engine"] == engine);
    }

    TempFile bad("bad.fo", "exists x. (E(x,");
    CliRun r = run_cli({"mc", "--graph", graph.path(), "--formula", bad.path()});
    CHECK(r.exit_code == 2);
    CHECK(!r.err.empty());

    CliRun missing = run_cli({"mc", "--graph", "/nonexistent", "--formula", formula.path()});
    CHECK(missing.exit_code == 2);
}

TEST_CASE("cli game") {
    TempFile graph("hg3.graph.json", make_half_graph(3).to_json().dump());
    CliRun r = run_cli({"game", "--graph", graph.path(), "--kind", "d", "--rounds", "1",
                        "--a", "0", "--b", "1"});
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["winner"] == "Spoiler");  // same-side pair

    CliRun mirror = run_cli({"game", "--graph", graph.path(), "--kind", "d", "--rounds", "3",
                             "--a", "2", "--b", "2"});
    CHECK(nlohmann::json::parse(mirror.out)["winner"] == "Duplicator");

    CliRun traced = run_cli({"game", "--graph", graph.path(), "--kind", "d", "--rounds", "1",
                             "--a", "0", "--b", "1", "--trace"});
    auto tj = nlohmann::json::parse(traced.out);
    CHECK(diffmc::testing::check_transcript_json(tj["transcript"]).empty());
    CHECK(tj["transcript"]["winner"] == tj["winner"]);

    CHECK(run_cli({"game", "--graph", graph.path(), "--kind", "xx", "--rounds", "1", "--a", "0",
                   "--b", "1"})
              .exit_code == 2);
}

TEST_CASE("cli relation") {
    TempFile graph("hg2.graph.json", make_half_graph(2).to_json().dump());
    CliRun r = run_cli({"relation", "--graph", graph.path(), "--kind", "d", "--rounds", "1"});
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(diffmc::testing::check_relation_json(j).empty());
    for (const auto& p : j["pairs"]) {
        bool same_side = (p[0].get<int>() < 2) == (p[1].get<int>() < 2);
        CHECK(!same_side);
    }
}

TEST_CASE("cli dn") {
    TempFile graph("p4.graph.json", make_path(4).to_json().dump());
    CliRun bare = run_cli({"dn", "--graph", graph.path(), "--r", "1"});
    CHECK(bare.exit_code == 2);  // uncolored, no preset

    CliRun uniform = run_cli({"dn", "--graph", graph.path(), "--r", "1", "--preset", "uniform"});
    CHECK(uniform.exit_code == 0);
    auto j = nlohmann::json::parse(uniform.out);
    CHECK(diffmc::testing::check_census_json(j).empty());
    CHECK(j["aggregate"]["disagreements"] == 0);

    TempFile coloring("c.json", R"({"colors":{"0":0,"1":0,"2":1,"3":1}})");
    CliRun with_file =
        run_cli({"dn", "--graph", graph.path(), "--r", "1", "--coloring", coloring.path()});
    CHECK(with_file.exit_code == 0);
}

TEST_CASE("cli check") {
    CliRun unknown = run_cli({"check", "nope"});
    CHECK(unknown.exit_code == 2);

    CliRun ok = run_cli({"check", "lemma51", "--max-n", "3"});
    CHECK(ok.exit_code == 0);
    auto j = nlohmann::json::parse(ok.out);
    CHECK(diffmc::testing::check_suite_json(j).empty());
    CHECK(j["pass"] == true);

    CliRun help = run_cli({"--help"});
    CHECK(help.exit_code == 0);
}
