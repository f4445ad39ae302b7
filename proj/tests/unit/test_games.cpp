#include "doctest.h"

#include "diffmc/games.hpp"
#include "support/naive_games.hpp"
#include "support/schema_check.hpp"

using namespace diffmc;
using diffmc::testing::naive_diff;
using diffmc::testing::naive_ef;

TEST_CASE("partial_iso") {
    LabeledGraph p3 = make_path(3);
    CHECK(partial_iso(p3, {}, p3, {}));
    CHECK(partial_iso(p3, {0, 1}, p3, {2, 1}));
    CHECK(!partial_iso(p3, {0, 2}, p3, {0, 1}));
    CHECK(!partial_iso(p3, {0, 0}, p3, {0, 1}));  // equality pattern
    CHECK_THROWS_AS(partial_iso(p3, {0}, p3, {0, 1}), InputError);

    LabeledGraph lab = make_path(3);
    lab.add_label(0, "a");
    CHECK(!partial_iso(lab, {0}, lab, {2}));
    CHECK(partial_iso(lab, {1}, lab, {1}));

    LabeledGraph colored = make_path(3);
    colored.set_color(0, 1);
    colored.set_color(2, 2);
    CHECK(!partial_iso(colored, {0}, colored, {2}));
}

TEST_CASE("ef winner examples") {
    LabeledGraph p2 = make_path(2);
    LabeledGraph edgeless(2);
    CHECK(ef_winner(p2, {}, p2, {}, 0) == Winner::Duplicator);
    // one round only fixes a single vertex per side, so no difference shows yet
    CHECK(ef_winner(p2, {}, edgeless, {}, 1) == Winner::Duplicator);
    CHECK(naive_ef(p2, {}, edgeless, {}, 1) == Winner::Duplicator);
    // two rounds expose the edge
    CHECK(ef_winner(p2, {}, edgeless, {}, 2) == Winner::Spoiler);
    CHECK(naive_ef(p2, {}, edgeless, {}, 2) == Winner::Spoiler);

    LabeledGraph p4 = make_path(4);
    for (int m = 0; m <= 3; ++m) {
        CHECK(ef_winner(p4, {1, 2}, p4, {1, 2}, m) == Winner::Duplicator);
    }
}

TEST_CASE("sd and d winner examples") {
    LabeledGraph p3 = make_path(3);
    for (int m = 0; m <= 3; ++m) {
        CHECK(sd_winner(p3, {1}, {1}, m) == Winner::Duplicator);
        CHECK(d_winner(p3, {1}, {1}, m) == Winner::Duplicator);
    }
    CHECK(sd_winner(p3, {0}, {1}, 2) == Winner::Spoiler);
    CHECK(naive_diff(p3, {0}, {1}, 2, false) == Winner::Spoiler);
    CHECK(d_winner(p3, {0}, {1}, 2) == Winner::Spoiler);
    CHECK(naive_diff(p3, {0}, {1}, 2, true) == Winner::Spoiler);

    LabeledGraph hg2 = make_half_graph(2);
    auto [side_a, side_b] = half_graph_sides(2);
    CHECK(d_winner(hg2, {side_a.values()[0]}, {side_a.values()[1]}, 1) == Winner::Spoiler);
    CHECK(d_winner(hg2, {side_b.values()[0]}, {side_b.values()[1]}, 1) == Winner::Spoiler);

    CHECK_THROWS_AS(sd_winner(p3, {}, {}, 1), InputError);
    CHECK_THROWS_AS(d_winner(p3, {0}, {1, 2}, 1), InputError);
}

TEST_CASE("spoiler move enumeration on P4") {
    // start (a1,b1) = (0,3), the two path ends
    LabeledGraph p4 = make_path(4);
    auto moves = legal_spoiler_moves(GameKind::SD, p4, {0}, {3});
    bool found = false;
    for (const auto& m : moves) {
        if (m.index_i == 0 && m.vertex == 2 && m.a_side) found = true;
        CHECK(sym_diff_neighborhood(p4, 0, 3).contains(m.vertex));
    }
    CHECK(found);
}

TEST_CASE("solvers match the naive oracle on every small graph") {
    for_each_graph_up_to(4, [](const LabeledGraph& g) {
        EfGameSolver ef(g, g);
        DiffGameSolver sd(g, GameKind::SD);
        DiffGameSolver d(g, GameKind::D);
        for (int m = 0; m <= 2; ++m) {
            for (int u = 0; u < g.size(); ++u) {
                for (int v = u; v < g.size(); ++v) {
                    CHECK(ef.winner({u}, {v}, m) == naive_ef(g, {u}, g, {v}, m));
                    CHECK(sd.winner({u}, {v}, m) == naive_diff(g, {u}, {v}, m, false));
                    CHECK(d.winner({u}, {v}, m) == naive_diff(g, {u}, {v}, m, true));
                }
            }
        }
    });
    // a labeled instance, single vertices atomically distinct
    LabeledGraph lab(2);
    lab.add_label(0, "a");
    CHECK(d_winner(lab, {0}, {1}, 1) == naive_diff(lab, {0}, {1}, 1, true));
    CHECK(d_winner(lab, {0}, {1}, 1) == Winner::Spoiler);
}

TEST_CASE("restriction monotonicity on small graphs") {
    for_each_graph_up_to(4, [](const LabeledGraph& g) {
        for (int m = 0; m <= 2; ++m) {
            for (int u = 0; u < g.size(); ++u) {
                for (int v = u + 1; v < g.size(); ++v) {
                    if (ef_winner(g, {u}, g, {v}, m) == Winner::Spoiler) {
                        CHECK(sd_winner(g, {u}, {v}, static_cast<int>(l_of(m))) ==
                              Winner::Spoiler);
                    }
                    if (sd_winner(g, {u}, {v}, m) == Winner::Spoiler) {
                        CHECK(d_winner(g, {u}, {v}, m) == Winner::Spoiler);
                    }
                }
            }
        }
    });
}

TEST_CASE("l_of") {
    CHECK(l_of(0) == 0);
    CHECK(l_of(1) == 1);
    CHECK(l_of(2) == 3);
    CHECK(l_of(3) == 7);
    CHECK(l_of(10) == 1023);
    CHECK_THROWS_AS(l_of(-1), InputError);
}

TEST_CASE("game traces") {
    LabeledGraph p4 = make_path(4);

    SUBCASE("optimal play reproduces the solved winner") {
        for (GameKind kind : {GameKind::EF, GameKind::SD, GameKind::D}) {
            for (int m = 0; m <= 2; ++m) {
                for (int u = 0; u < 4; ++u) {
                    for (int v = 0; v < 4; ++v) {
                        Transcript t = game_trace(kind, p4, {u}, {v}, m);
                        REQUIRE(t.winner.has_value());
                        Winner solved;
                        switch (kind) {
                            case GameKind::EF: solved = ef_winner(p4, {u}, p4, {v}, m); break;
                            case GameKind::SD: solved = sd_winner(p4, {u}, {v}, m); break;
                            case GameKind::D: solved = d_winner(p4, {u}, {v}, m); break;
                        }
                        CHECK(*t.winner == solved);
                        CHECK(diffmc::testing::check_transcript_json(t.to_json()).empty());
                        // the recorded final position decides the game
                        CHECK(partial_iso(p4, t.final_position.a, p4, t.final_position.b) ==
                              (*t.winner == Winner::Duplicator));
                        CHECK(t.final_position.kind == kind);
                    }
                }
            }
        }
    }

    SUBCASE("scripted disconnecting play on P4") {
        GameScripts scripts;
        scripts.spoiler = std::vector<SpoilerMove>{{0, 2, true}};  // a2 := vertex 2
        Transcript t = game_trace(GameKind::SD, p4, {0}, {3}, 1, scripts);
        REQUIRE(t.moves.size() >= 1);
        CHECK(t.moves[0].player == "Spoiler");
        CHECK(t.moves[0].vertex == 2);
        CHECK(t.moves[0].side == "a");
        CHECK(t.moves[0].legal);
        CHECK(!t.error.has_value());
    }

    SUBCASE("illegal scripted duplicator reply is reported") {
        LabeledGraph p3 = make_path(3);
        // D(0,2) = {} on P3? no: N(0)={1}, N(2)={1} -> D empty; use (0,1) instead
        GameScripts scripts;
        scripts.spoiler = std::vector<SpoilerMove>{{0, 2, true}};
        scripts.duplicator = std::vector<int>{2};
        // D(0,3) on P4 = {1,2}; reply 3 is outside it
        GameScripts bad;
        bad.spoiler = std::vector<SpoilerMove>{{0, 2, true}};
        bad.duplicator = std::vector<int>{3};
        Transcript t = game_trace(GameKind::D, p4, {0}, {3}, 1, bad);
        REQUIRE(t.error.has_value());
        CHECK(*t.error == "reply not in D(a_i,b_i)");
        CHECK(!t.moves.back().legal);
        CHECK(!t.winner.has_value());
    }

    SUBCASE("illegal scripted spoiler move is reported") {
        GameScripts bad;
        bad.spoiler = std::vector<SpoilerMove>{{0, 0, true}};  // 0 not in D(0,3)
        Transcript t = game_trace(GameKind::D, p4, {0}, {3}, 1, bad);
        REQUIRE(t.error.has_value());
        CHECK(!t.moves.back().legal);
    }

    SUBCASE("traces are deterministic") {
        Transcript a = game_trace(GameKind::D, p4, {0}, {3}, 2);
        Transcript b = game_trace(GameKind::D, p4, {0}, {3}, 2);
        CHECK(a.to_json() == b.to_json());
    }
}

TEST_CASE("winner computation is deterministic") {
    LabeledGraph hg3 = make_half_graph(3);
    for (int rep = 0; rep < 3; ++rep) {
        CHECK(d_winner(hg3, {0}, {1}, 1) == d_winner(hg3, {0}, {1}, 1));
        CHECK(sd_winner(hg3, {0}, {4}, 2) == sd_winner(hg3, {0}, {4}, 2));
    }
}
