#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "diffmc/difflocal.hpp"
#include "diffmc/formula.hpp"
#include "diffmc/games.hpp"
#include "diffmc/graph.hpp"
#include "diffmc/mc.hpp"
#include "diffmc/relations.hpp"

namespace diffmc::checks {

struct CheckSuiteResult {
    std::string suite;
    long long instances = 0;
    std::vector<nlohmann::json> counterexamples;  // capped; see counterexample_count
    long long counterexample_count = 0;
    double elapsed_ms = 0.0;

    bool pass() const { return counterexample_count == 0; }
    nlohmann::json to_json() const;
};

// -1 / 0 fields fall back to each suite's own default bounds.
struct SuiteOptions {
    int max_n = -1;
    int max_m = -1;
    int max_r = -1;
    std::uint64_t seed = 0;
    int random_count = -1;
    int threads = 1;
};

inline constexpr std::uint64_t kDefaultSeed = 1729;

// Shipped sentence corpus: prenex, quantifier count <= 3, mixes E/=/labels.
const std::vector<FormulaPtr>& corpus_sentences();
// Non-prenex sentences exercising the prenex conversion.
const std::vector<FormulaPtr>& nonprenex_corpus();
// Open formulas (k, phi over x1..x{k+1}) with quantifier rank <= 2 for the
// pin-tuple rewriting checks.
const std::vector<std::pair<int, FormulaPtr>>& rewrite_corpus();
// A few small labeled graphs so label-sensitive checks are not vacuous.
std::vector<LabeledGraph> labeled_corpus_graphs();
// Deterministic G(n, 1/2) samples, n cycling through 6,7,8.
std::vector<LabeledGraph> random_graph_set(int count, std::uint64_t seed);

// One vertex per class of "(tuple,u) and (tuple,w) have equal FO p-types";
// the exact oracle counterpart of relations::representatives.
VertexSet exact_representatives(const LabeledGraph& g, const std::vector<int>& tuple, int p);

// Union of vertices played in any legal run of the r-round differential game
// from (u,v); positions with a violated partial map are terminal.
VertexSet d_game_run_support(const LabeledGraph& g, int u, int v, int rounds);

// EF Spoiler win at m implies SD Spoiler win at l(m).
CheckSuiteResult check_lemma51(const SuiteOptions& opts = {});
// Pairs on paths/cycles at distance > 2m with Duplicator-won EF games keep
// Duplicator in the differential game.
CheckSuiteResult check_lemma61(const SuiteOptions& opts = {});
// Every m-round EF class is a union of components of the l(m)-round
// differential relation.
CheckSuiteResult check_lemma62(const SuiteOptions& opts = {});
// Quantifier-free complement interpretation: Duplicator at m+1 rounds in G
// implies Duplicator at m rounds in the complement.
CheckSuiteResult check_lemma65(const SuiteOptions& opts = {});
// evaluate(xi_m) agrees with the differential game winner.
CheckSuiteResult check_xi_agreement(const SuiteOptions& opts = {});
// model_check(difftree) == model_check(brute) on the corpus.
CheckSuiteResult check_oracle_equiv(const SuiteOptions& opts = {});
// dn_census agreement plus game-run containment in closed DN_r.
CheckSuiteResult check_dn_locality(const SuiteOptions& opts = {});
// SD Spoiler win implies D Spoiler win at equal rounds.
CheckSuiteResult check_monotonicity(const SuiteOptions& opts = {});

// Acceptance-only checks (not exposed as CLI suites):
CheckSuiteResult check_game_type_correspondence(const SuiteOptions& opts = {});
CheckSuiteResult check_half_graph_separation(const SuiteOptions& opts = {});
CheckSuiteResult check_rewrite_equiv(const SuiteOptions& opts = {});

// CLI suite names: lemma51, lemma62, lemma61, lemma65, xi_agreement,
// oracle_equiv, dn_locality, monotonicity.
CheckSuiteResult run_suite(const std::string& name, const SuiteOptions& opts = {});

}  // namespace diffmc::checks
