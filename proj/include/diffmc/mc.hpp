#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "diffmc/formula.hpp"
#include "diffmc/games.hpp"
#include "diffmc/graph.hpp"
#include "diffmc/relations.hpp"

namespace diffmc {

// Canonical encoding of a tuple's isomorphism class inside its graph:
// equality pattern + adjacency pattern + per-position label sets. Equal keys
// iff position i -> position i is a label-preserving isomorphism of the
// induced subgraphs.
struct IsoType {
    std::string key;
    bool operator==(const IsoType&) const = default;
    auto operator<=>(const IsoType&) const = default;
};

IsoType iso_type(const LabeledGraph& g, const std::vector<int>& tuple);

// Rooted tree of vertex assignments; node 0 is the root (vertex -1), every
// leaf sits at depth `height`.
struct EvalTree {
    struct Node {
        int vertex = -1;
        std::vector<int> children;
    };
    std::vector<Node> nodes;
    int height = 0;

    int node_count() const { return static_cast<int>(nodes.size()); }
};

// Complete n-ary evaluation tree of the given height. Materialized, so the
// guard is on total node count.
EvalTree full_tree(const LabeledGraph& g, int height, long long node_guard = 1'000'000);

// Verdict for a prenex sentence read off an evaluation tree: leaves evaluate
// the matrix on their root path, an internal node at depth d aggregates its
// children by prefix quantifier d (exists = or, forall = and).
bool verdict_from_tree(const EvalTree& tree, const LabeledGraph& g, const PrenexSentence& ps);

// Brute-force verdict via the (implicit) full evaluation tree; independent of
// the recursive fo-logic evaluator's quantifier handling. Guard bounds n^q.
bool full_tree_mc(const LabeledGraph& g, const PrenexSentence& ps,
                  long long position_guard = 10'000'000);

// Evaluation label of the node reached by `path` in the full (G,q)-tree:
// iso_type key at depth q, otherwise the sorted set of child labels.
std::string full_gq_label(const LabeledGraph& g, const std::vector<int>& path, int q);

using RepresentativeFn =
    std::function<VertexSet(const LabeledGraph&, const std::vector<int>&, int)>;

struct ReducedTreeStats {
    std::vector<int> level_max_branching;
    long long rep_calls = 0;
};

// Reduced evaluation tree: the root's children are rep_fn(G, (), q-1), and a
// node at depth i >= 1 with root path v gets one child per rep_fn(G, v, q-i).
EvalTree reduced_tree(const LabeledGraph& g, int q, const RepresentativeFn& rep_fn,
                      ReducedTreeStats* stats = nullptr);

// Memo for representative sets keyed by (pinned tuple, p); reuse across
// sentences of equal quantifier count on the same graph.
class RepCache {
public:
    std::map<std::pair<std::vector<int>, int>, VertexSet> entries;
    long long hits = 0;
    long long misses = 0;
};

enum class Engine { Brute, Difftree };

Engine engine_from_string(const std::string& s);

struct ModelCheckOptions {
    Engine engine = Engine::Difftree;
    long long full_tree_guard = 10'000'000;
    int threads = 1;
    RepresentativeFn rep_fn;   // defaults to relations::representatives
    RepCache* cache = nullptr; // optional, caller owns; keyed per graph
};

struct ModelCheckResult {
    bool verdict = false;
    nlohmann::json diagnostics;
};

// engine=brute: recursive FO semantics. engine=difftree: prenex the sentence,
// build the reduced tree from differential-game representatives, read the
// verdict off the tree.
ModelCheckResult model_check(const LabeledGraph& g, const Formula& sentence,
                             const ModelCheckOptions& options = {});

enum class DiffLocalMode { Direct, Xi };

// Winner of the r-round differential game between u and v decided inside the
// closed differential r-neighborhood G[DN_r[u,v]]; every legal run stays in
// there. Direct solves the game, Xi evaluates xi_formula(r,1) on the
// subgraph; the two must agree.
Winner difflocal_winner(const LabeledGraph& g, int u, int v, int r, DiffLocalMode mode);

}  // namespace diffmc
