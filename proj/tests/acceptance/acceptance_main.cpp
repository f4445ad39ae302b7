// Acceptance suite: one line per criterion, exit 0 iff all pass.
//
// Each criterion runs at its full pinned bounds, so this binary is the slow
// one in the test tree (minutes, not seconds). --criterion N runs one,
// --threads T parallelizes the per-graph loops without changing results.

#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include "diffmc/checks.hpp"

using diffmc::checks::CheckSuiteResult;
using diffmc::checks::SuiteOptions;

namespace {

struct Criterion {
    int number;
    std::string description;
    CheckSuiteResult (*run)(const SuiteOptions&);
    SuiteOptions options;
};

SuiteOptions bounds(int max_n, int max_m = -1, int max_r = -1, int random_count = -1) {
    SuiteOptions opts;
    opts.max_n = max_n;
    opts.max_m = max_m;
    opts.max_r = max_r;
    opts.random_count = random_count;
    return opts;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    int threads = 1;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc)
            threads = std::atoi(argv[++i]);
        else {
            std::cerr << "usage: acceptance [--criterion N] [--threads T]\n";
            return 2;
        }
    }

    std::vector<Criterion> criteria = {
        {1, "oracle equivalence: difftree == brute, corpus over n<=5 plus 100 random n in {6,7,8}",
         diffmc::checks::check_oracle_equiv, bounds(5, -1, -1, 100)},
        {2, "game/type correspondence: ef_winner == fo_type_equiv, n<=5, m<=2",
         diffmc::checks::check_game_type_correspondence, bounds(5, 2)},
        {3, "EF Spoiler at m<=2 implies SD Spoiler at l(m), n<=5",
         diffmc::checks::check_lemma51, bounds(5, 2)},
        {4, "SD Spoiler implies D Spoiler at equal rounds, n<=5, m<=3",
         diffmc::checks::check_monotonicity, bounds(5, 3)},
        {5, "distance > 4 and EF-2 Duplicator implies D-2 Duplicator on paths/cycles n<=12",
         diffmc::checks::check_lemma61, bounds(12, 2)},
        {6, "half-graph separation: same-side Spoiler at 1 round and greedy MIS >= n, n=2..8",
         diffmc::checks::check_half_graph_separation, bounds(8)},
        {7, "xi_m formula agrees with d_winner, n<=5, m<=2",
         diffmc::checks::check_xi_agreement, bounds(5, 2)},
        {8, "every EF-m class is a union of D-l(m) components, n<=5, m<=2",
         diffmc::checks::check_lemma62, bounds(5, 2)},
        {9, "dn_census: zero local/full disagreements, uniform/atomic/seeded colorings, n<=5, r<=2",
         diffmc::checks::check_dn_locality, bounds(5, -1, 2)},
        {10, "complement interpretation: D Duplicator at m+1 in G implies at m in I(G), n<=6, m<=2",
         diffmc::checks::check_lemma65, bounds(6, 2)},
        {11, "pin-tuple rewriting equivalence, corpus qr<=2, k<=2, n<=4",
         diffmc::checks::check_rewrite_equiv, bounds(4, 2)},
    };

    bool all_pass = true;
    for (auto& criterion : criteria) {
        if (only != 0 && criterion.number != only) continue;
        SuiteOptions opts = criterion.options;
        opts.threads = threads;
        CheckSuiteResult result = criterion.run(opts);
        bool pass = result.pass();
        all_pass = all_pass && pass;
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << criterion.number << ". "
                  << criterion.description << " (instances=" << result.instances
                  << ", counterexamples=" << result.counterexample_count << ", "
                  << static_cast<long long>(result.elapsed_ms) << " ms)\n";
        if (!pass) {
            for (const auto& cex : result.counterexamples) {
                std::cout << "       counterexample: " << cex.dump() << "\n";
            }
        }
        std::cout.flush();
    }
    return all_pass ? 0 : 1;
}
