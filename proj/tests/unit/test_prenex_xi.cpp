#include "doctest.h"

#include "diffmc/checks.hpp"
#include "diffmc/formula.hpp"
#include "diffmc/games.hpp"

using namespace diffmc;

TEST_CASE("to_prenex on already-prenex input") {
    auto f = parse_formula("forall x1. exists x2. (E(x1,x2) & !x1=x2)");
    PrenexSentence ps = to_prenex(*f);
    REQUIRE(ps.quantifier_count() == 2);
    CHECK(ps.prefix[0] == std::pair{Quantifier::Forall, std::string("x1")});
    CHECK(ps.prefix[1] == std::pair{Quantifier::Exists, std::string("x2")});
    CHECK(formula_equals(*ps.matrix, *parse_formula("E(x1,x2) & !x1=x2")));
    CHECK(formula_equals(*prenex_to_formula(ps), *f));
}

TEST_CASE("to_prenex pushes negation") {
    PrenexSentence ps = to_prenex(*parse_formula("!(exists x. L[a](x))"));
    REQUIRE(ps.quantifier_count() == 1);
    CHECK(ps.prefix[0].first == Quantifier::Forall);
    CHECK(formula_equals(*ps.matrix, *parse_formula("!L[a](x1)")));
}

TEST_CASE("to_prenex renames apart") {
    PrenexSentence ps = to_prenex(*parse_formula("(exists x. E(x,x)) & (exists x. !E(x,x))"));
    REQUIRE(ps.quantifier_count() == 2);
    CHECK(ps.prefix[0].first == Quantifier::Exists);
    CHECK(ps.prefix[1].first == Quantifier::Exists);
    CHECK(formula_equals(*ps.matrix, *parse_formula("E(x1,x1) & !E(x2,x2)")));
}

TEST_CASE("to_prenex quantifier count matches occurrences") {
    // implications flip the antecedent's quantifiers without duplication
    PrenexSentence ps =
        to_prenex(*parse_formula("(forall x. exists y. E(x,y)) -> (exists z. E(z,z))"));
    CHECK(ps.quantifier_count() == 3);
    CHECK(ps.prefix[0].first == Quantifier::Exists);  // flipped forall
    CHECK(ps.prefix[1].first == Quantifier::Forall);  // flipped exists
    CHECK(ps.prefix[2].first == Quantifier::Exists);
    CHECK_THROWS_AS(to_prenex(*parse_formula("E(x,y)")), InputError);
}

TEST_CASE("to_prenex preserves semantics on small graphs") {
    auto check_corpus = [](const std::vector<FormulaPtr>& corpus) {
        for_each_graph_up_to(4, [&](const LabeledGraph& g) {
            for (const auto& f : corpus) {
                PrenexSentence ps = to_prenex(*f);
                CHECK(evaluate(g, f) == evaluate(g, prenex_to_formula(ps)));
            }
        });
    };
    check_corpus(checks::corpus_sentences());
    check_corpus(checks::nonprenex_corpus());
}

TEST_CASE("xi formula shape") {
    auto xi0 = xi_formula(0, 1, {});
    CHECK(xi0->kind == FormulaKind::True);  // empty conjunction
    CHECK(quantifier_rank(*xi_formula(0, 2, {"a"})) == 0);
    for (int m = 0; m <= 3; ++m) {
        CHECK(quantifier_rank(*xi_formula(m, 1, {})) == 2 * m);
        CHECK(quantifier_rank(*xi_formula(m, 2, {"a", "b"})) == 2 * m);
    }
    auto free1 = free_variables(*xi_formula(1, 1, {}));
    CHECK(free1 == std::set<std::string>{"x1", "y1"});
    auto free2 = free_variables(*xi_formula(2, 2, {}));
    CHECK(free2 == std::set<std::string>{"x1", "x2", "y1", "y2"});
    CHECK(is_well_named(*xi_formula(3, 2, {"a"})));
    CHECK_THROWS_AS(xi_formula(-1, 1, {}), InputError);
    CHECK_THROWS_AS(xi_formula(0, 0, {}), InputError);
}

TEST_CASE("xi evaluates like the differential game on a path") {
    LabeledGraph p3 = make_path(3);
    auto xi1 = xi_formula(1, 1, {});
    // end vs middle: Spoiler separates them in one round
    CHECK(d_winner(p3, {0}, {1}, 1) == Winner::Spoiler);
    CHECK(!evaluate(p3, xi1, {{"x1", 0}, {"y1", 1}}));
    // the two ends stay equivalent
    CHECK(d_winner(p3, {0}, {2}, 1) == Winner::Duplicator);
    CHECK(evaluate(p3, xi1, {{"x1", 0}, {"y1", 2}}));

    // u = v is reflexively true at any depth
    for (int m = 0; m <= 2; ++m) {
        auto xi = xi_formula(m, 1, {});
        for (int u = 0; u < 3; ++u) CHECK(evaluate(p3, xi, {{"x1", u}, {"y1", u}}));
    }
}

TEST_CASE("apply_interpretation") {
    LabeledGraph p3 = make_path(3);
    p3.add_label(0, "a");
    SUBCASE("identity formula strips labels") {
        LabeledGraph h = apply_interpretation(p3, *parse_formula("E(x,y)"));
        CHECK(h.edge_count() == 2);
        CHECK(h.adjacent(0, 1));
        CHECK(h.labels(0).empty());
        LabeledGraph kept = apply_interpretation(p3, *parse_formula("E(x,y)"), true);
        CHECK(kept.has_label(0, "a"));
    }
    SUBCASE("complement") {
        LabeledGraph h = apply_interpretation(p3, *parse_formula("!E(x,y)"));
        CHECK(h.edge_count() == 1);
        CHECK(h.adjacent(0, 2));
        // agrees with the direct complement on every small graph
        for_each_graph_up_to(4, [](const LabeledGraph& g) {
            LabeledGraph via_psi = apply_interpretation(g, *parse_formula("!E(x,y)"));
            LabeledGraph direct = complement_of(g);
            for (int u = 0; u < g.size(); ++u) {
                for (int v = u + 1; v < g.size(); ++v) {
                    CHECK(via_psi.adjacent(u, v) == direct.adjacent(u, v));
                }
            }
        });
    }
    SUBCASE("square of the path") {
        LabeledGraph p4 = make_path(4);
        auto psi = parse_formula("exists z. (E(x,z) & E(z,y))");
        LabeledGraph h = apply_interpretation(p4, *psi);
        // expected edges computed by the brute-force evaluator directly
        for (int u = 0; u < 4; ++u) {
            for (int v = u + 1; v < 4; ++v) {
                bool expect = evaluate(p4, psi, {{"x", u}, {"y", v}}) ||
                              evaluate(p4, psi, {{"x", v}, {"y", u}});
                CHECK(h.adjacent(u, v) == expect);
            }
        }
        CHECK(h.adjacent(0, 2));
        CHECK(h.adjacent(1, 3));
        CHECK(!h.adjacent(0, 1));
        CHECK(!h.adjacent(0, 3));
    }
    SUBCASE("wrong free variables") {
        CHECK_THROWS_AS(apply_interpretation(p3, *parse_formula("E(x,x)")), InputError);
        CHECK_THROWS_AS(apply_interpretation(p3, *parse_formula("exists z. E(x,z)")), InputError);
    }
}

TEST_CASE("pin_tuple_labels") {
    LabeledGraph p3 = make_path(3);
    p3.add_label(1, "orig");
    SUBCASE("empty tuple is the identity") {
        CHECK(pin_tuple_labels(p3, {}) == p3);
    }
    SUBCASE("single pin") {
        LabeledGraph g = pin_tuple_labels(p3, {1});
        CHECK(g.has_label(1, "pin:1"));
        CHECK(g.has_label(1, "orig"));
        CHECK(g.has_label(0, "pinN:1"));
        CHECK(g.has_label(2, "pinN:1"));
        CHECK(!g.has_label(1, "pinN:1"));
    }
    SUBCASE("repeated vertex gets both pins") {
        LabeledGraph g = pin_tuple_labels(p3, {0, 0});
        CHECK(g.has_label(0, "pin:1"));
        CHECK(g.has_label(0, "pin:2"));
        CHECK(g.has_label(1, "pinN:1"));
        CHECK(g.has_label(1, "pinN:2"));
    }
}

TEST_CASE("rewrite_with_pinned_tuple") {
    SUBCASE("atomic substitutions") {
        LabeledGraph p2 = make_path(2);
        auto r1 = rewrite_with_pinned_tuple(*parse_formula("E(x1,x2)"), p2, {0});
        CHECK(formula_equals(*r1, *parse_formula("L[pinN:1](x)")));
        auto r2 = rewrite_with_pinned_tuple(*parse_formula("x1=x2"), p2, {0});
        CHECK(formula_equals(*r2, *parse_formula("L[pin:1](x)")));
    }
    SUBCASE("pinned pairs fold to constants") {
        LabeledGraph p3 = make_path(3);
        auto f = parse_formula("(E(x1,x2) & E(x1,x3)) | x2=x3");
        auto r = rewrite_with_pinned_tuple(*f, p3, {0, 1});
        // E(x1,x2) with v1=0, v2=1 adjacent -> true; x2=x3 -> L[pin:2](x)
        CHECK(free_variables(*r) == std::set<std::string>{"x"});
        for (int u = 0; u < 3; ++u) {
            LabeledGraph pinned = pin_tuple_labels(p3, {0, 1});
            bool lhs = evaluate(p3, f, {{"x1", 0}, {"x2", 1}, {"x3", u}});
            CHECK(lhs == evaluate(pinned, r, {{"x", u}}));
        }
    }
    SUBCASE("wrong free variables") {
        LabeledGraph p2 = make_path(2);
        CHECK_THROWS_AS(rewrite_with_pinned_tuple(*parse_formula("E(x1,x2)"), p2, {0, 1}),
                        InputError);
        CHECK_THROWS_AS(rewrite_with_pinned_tuple(*parse_formula("E(y,z)"), p2, {0}), InputError);
    }
    SUBCASE("equivalence on the rewrite corpus") {
        // small slice here; the acceptance suite covers n <= 4 exhaustively
        for_each_graph(3, [](const LabeledGraph& g) {
            for (const auto& [k, phi] : checks::rewrite_corpus()) {
                if (k != 1) continue;
                for (int v0 = 0; v0 < g.size(); ++v0) {
                    LabeledGraph pinned = pin_tuple_labels(g, {v0});
                    auto rewritten = rewrite_with_pinned_tuple(*phi, g, {v0});
                    for (int u = 0; u < g.size(); ++u) {
                        bool lhs = evaluate(g, phi, {{"x1", v0}, {"x2", u}});
                        bool rhs = evaluate(pinned, rewritten, {{"x", u}});
                        CHECK(lhs == rhs);
                    }
                }
            }
        });
    }
    SUBCASE("bound x is renamed away") {
        LabeledGraph p2 = make_path(2);
        auto f = parse_formula("exists x. (E(x1,x) & E(x,x2))");
        auto r = rewrite_with_pinned_tuple(*f, p2, {0});
        CHECK(free_variables(*r) == std::set<std::string>{"x"});
        for (int u = 0; u < 2; ++u) {
            LabeledGraph pinned = pin_tuple_labels(p2, {0});
            CHECK(evaluate(p2, f, {{"x1", 0}, {"x2", u}}) == evaluate(pinned, r, {{"x", u}}));
        }
    }
}
