#include "doctest.h"

#include "diffmc/checks.hpp"
#include "support/schema_check.hpp"

using namespace diffmc;
using namespace diffmc::checks;

namespace {

bool is_prenex(const Formula& f) {
    const Formula* cur = &f;
    while (cur->kind == FormulaKind::Exists || cur->kind == FormulaKind::Forall) {
        cur = cur->lhs.get();
    }
    return quantifier_rank(*cur) == 0;
}

SuiteOptions tiny(int max_n, int max_m = -1) {
    SuiteOptions opts;
    opts.max_n = max_n;
    opts.max_m = max_m;
    return opts;
}

}  // namespace

TEST_CASE("corpus shape") {
    CHECK(corpus_sentences().size() >= 20);
    for (const auto& f : corpus_sentences()) {
        CHECK(is_sentence(*f));
        CHECK(is_prenex(*f));
        CHECK(quantifier_rank(*f) <= 3);
    }
    for (const auto& f : nonprenex_corpus()) CHECK(is_sentence(*f));
    for (const auto& [k, f] : rewrite_corpus()) {
        CHECK(quantifier_rank(*f) <= 2);
        std::set<std::string> expected;
        for (int i = 1; i <= k + 1; ++i) expected.insert("x" + std::to_string(i));
        CHECK(free_variables(*f) == expected);
    }
    CHECK(labeled_corpus_graphs().size() >= 4);
    CHECK(random_graph_set(9, 7).size() == 9);
    CHECK(random_graph_set(9, 7)[3] == random_graph_set(9, 7)[3]);
}

TEST_CASE("d_game_run_support stays in the closed neighborhood") {
    LabeledGraph p4 = make_path(4);
    for (int v = 0; v < 4; ++v) p4.set_color(v, 0);
    VertexSet support = d_game_run_support(p4, 0, 3, 2);
    VertexSet dn = differential_neighborhood(p4, 0, 3, 2, true);
    for (int w : support) CHECK(dn.contains(w));
    CHECK(!support.empty());
}

TEST_CASE("suites pass at small bounds") {
    CHECK(check_lemma51(tiny(3)).pass());
    CHECK(check_lemma51(tiny(5, 3)).pass());  // full module invariant, l(3)=7 rounds
    CHECK(check_lemma61(tiny(6)).pass());
    CHECK(check_lemma62(tiny(3, 1)).pass());
    CHECK(check_lemma65(tiny(4, 1)).pass());
    CHECK(check_xi_agreement(tiny(3, 1)).pass());
    CHECK(check_dn_locality(tiny(3)).pass());
    CHECK(check_monotonicity(tiny(3, 2)).pass());
    CHECK(check_game_type_correspondence(tiny(3, 1)).pass());
    CHECK(check_half_graph_separation(tiny(4)).pass());
    CHECK(check_rewrite_equiv(tiny(3, 1)).pass());

    SuiteOptions oracle;
    oracle.max_n = 3;
    oracle.random_count = 4;
    CheckSuiteResult r = check_oracle_equiv(oracle);
    CHECK(r.pass());
    CHECK(r.instances > 0);
    CHECK(diffmc::testing::check_suite_json(r.to_json()).empty());
}

TEST_CASE("suite dispatch") {
    CHECK_THROWS_AS(run_suite("lemma99", {}), InputError);
    SuiteOptions opts = tiny(3, 1);
    CheckSuiteResult a = run_suite("lemma62", opts);
    CheckSuiteResult b = run_suite("lemma62", opts);
    CHECK(a.pass());
    CHECK(a.instances == b.instances);
    CHECK(a.counterexample_count == b.counterexample_count);

    SUBCASE("threads do not change suite results") {
        SuiteOptions threaded = tiny(3, 1);
        threaded.threads = 4;
        CheckSuiteResult c = run_suite("lemma62", threaded);
        CHECK(c.instances == a.instances);
        CHECK(c.counterexample_count == a.counterexample_count);
    }
}
