#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "diffmc/games.hpp"
#include "diffmc/graph.hpp"

namespace diffmc {

enum class RelationKind { DGame, SdGame, EfGame, FoType };

std::string to_string(RelationKind k);
RelationKind relation_kind_from_string(const std::string& s);

// Symmetric reflexive relation over V(G) with a provenance tag.
class RelationGraph {
public:
    RelationGraph(int n, std::string kind, int rounds);

    int size() const { return n_; }
    const std::string& kind() const { return kind_; }
    int rounds() const { return rounds_; }

    void set_related(int u, int v);
    bool related(int u, int v) const;
    const Bitset& row(int v) const;

    nlohmann::json to_json() const;  // related pairs with u < v

    bool operator==(const RelationGraph&) const = default;

private:
    int n_;
    std::string kind_;
    int rounds_;
    std::vector<Bitset> rows_;
};

// Pairwise relation from single-vertex starting tuples; reflexive entries are
// set without playing (Duplicator mirrors). Pairs u < v are computed, the
// mirror filled by symmetry. threads > 1 splits the pair list.
RelationGraph relation_graph(const LabeledGraph& g, RelationKind kind, int rounds,
                             int threads = 1);

// Connected components, ordered by smallest member; members sorted.
std::vector<std::vector<int>> components(const RelationGraph& r);

// Ascending scan, keep a vertex iff unrelated to everything kept so far.
// Maximal, independent, and hits every component.
VertexSet greedy_mis(const RelationGraph& r);

// Back-and-forth FO type equivalence, independent of the minimax solvers:
//   a =_0 b  iff partial_iso;
//   a =_q b  iff a =_0 b and every one-vertex extension on either side can be
//   matched on the other at rank q-1.
bool fo_type_equiv(const LabeledGraph& g, const std::vector<int>& a, const std::vector<int>& b,
                   int q);

enum class RepresentativeMode { IndependentSet, Components };

// Representative set hitting every class of the relation "u ~ w iff
// (tuple,u) and (tuple,w) have equal FO p-types": pin the tuple as labels,
// build the l(p)-round differential-game relation, and take a greedy maximal
// independent set (or one vertex per component in Components mode).
VertexSet representatives(const LabeledGraph& g, const std::vector<int>& tuple, int p,
                          RepresentativeMode mode = RepresentativeMode::IndependentSet,
                          int threads = 1);

}  // namespace diffmc
