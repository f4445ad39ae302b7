#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "diffmc/errors.hpp"

namespace diffmc {

using Bitset = boost::dynamic_bitset<>;

// Sorted, duplicate-free set of vertex ids.
class VertexSet {
public:
    VertexSet() = default;
    VertexSet(std::initializer_list<int> vs);
    explicit VertexSet(std::vector<int> vs);  // sorts and dedups
    static VertexSet from_bitset(const Bitset& bits);

    bool contains(int v) const;
    void insert(int v);
    int size() const { return static_cast<int>(values_.size()); }
    bool empty() const { return values_.empty(); }
    const std::vector<int>& values() const { return values_; }
    std::vector<int>::const_iterator begin() const { return values_.begin(); }
    std::vector<int>::const_iterator end() const { return values_.end(); }
    Bitset to_bitset(int n) const;
    VertexSet united(const VertexSet& other) const;

    bool operator==(const VertexSet&) const = default;

private:
    std::vector<int> values_;
};

// Finite simple graph with per-vertex label sets and an optional per-vertex
// color. Vertices are dense ints 0..n-1; adjacency is symmetric and loop-free.
// Colors surface as "color:<k>" labels wherever labels are compared, so games
// and formulas see them as part of the atomic type.
class LabeledGraph {
public:
    LabeledGraph() = default;
    explicit LabeledGraph(int n);

    int size() const { return n_; }

    void add_edge(int u, int v);
    bool adjacent(int u, int v) const;
    const Bitset& neighbors(int v) const;
    VertexSet neighbor_set(int v) const;
    int degree(int v) const;
    int edge_count() const;

    void add_label(int v, const std::string& label);
    const std::set<std::string>& labels(int v) const;
    bool has_label(int v, const std::string& label) const;
    std::set<std::string> effective_labels(int v) const;  // labels plus color:<k>
    std::set<std::string> label_alphabet() const;         // union over vertices

    void set_color(int v, int color);
    void clear_colors();
    std::optional<int> color(int v) const;
    bool fully_colored() const;

    nlohmann::json to_json() const;
    static LabeledGraph from_json(const nlohmann::json& j);

    bool operator==(const LabeledGraph& other) const;

    void check_vertex(int v) const;

private:
    int n_ = 0;
    std::vector<Bitset> adj_;
    std::vector<std::set<std::string>> labels_;
    std::vector<int> colors_;  // -1 = uncolored
};

// Dense ids for effective label sets; equal id <=> equal atomic (label) type.
std::vector<int> atomic_type_ids(const LabeledGraph& g);
// As above but interned jointly so ids are comparable across the two graphs.
std::pair<std::vector<int>, std::vector<int>> joint_atomic_type_ids(const LabeledGraph& g,
                                                                    const LabeledGraph& h);

// D(u,v) = N(u) symmetric-difference N(v). u == v allowed (empty result).
VertexSet sym_diff_neighborhood(const LabeledGraph& g, int u, int v);

// Colored differential r-neighborhood DN_r(u,v):
//   DN_1 = D(u,v); DN_r = DN_{r-1} together with the union of D(a,b) over
//   same-colored a != b in DN_{r-1}. Monotone, so iteration stops at the
//   fixpoint. Requires a fully colored graph and c(u) == c(v), u != v.
// closed=true adds {u,v}.
VertexSet differential_neighborhood(const LabeledGraph& g, int u, int v, int r, bool closed);

LabeledGraph make_path(int n);
LabeledGraph make_cycle(int n);
LabeledGraph make_complete(int n);
// Half-graph of order n: 2n vertices. Side A = 0..n-1, side B = n..2n-1,
// edge (i, n+j) iff i <= j, giving nested neighborhoods along each side.
LabeledGraph make_half_graph(int n);
std::pair<VertexSet, VertexSet> half_graph_sides(int n);
// 2 x n grid: rails 0..n-1 and n..2n-1, rungs (i, n+i).
LabeledGraph make_ladder(int n);
LabeledGraph complement_of(const LabeledGraph& g);
LabeledGraph make_erdos_renyi(int n, std::uint64_t seed, double p = 0.5);

// String dispatcher used by the CLI. Kinds: path, cycle, complete, half_graph,
// ladder, erdos_renyi(n, seed[, percent]).
LabeledGraph generate(const std::string& kind, const std::vector<long>& params);

// Every simple graph on exactly n labeled vertices (one per adjacency matrix).
void for_each_graph(int n, const std::function<void(const LabeledGraph&)>& fn);
// As above for 1..n vertices.
void for_each_graph_up_to(int n, const std::function<void(const LabeledGraph&)>& fn);
std::vector<LabeledGraph> all_graphs(int n);

struct InducedSubgraph {
    LabeledGraph graph;
    std::vector<int> to_sub;     // parent vertex -> sub vertex, -1 if absent
    std::vector<int> to_parent;  // sub vertex -> parent vertex
};
InducedSubgraph induced_subgraph(const LabeledGraph& g, const VertexSet& s);

inline constexpr int kInfiniteDistance = std::numeric_limits<int>::max();
// BFS shortest-path length; kInfiniteDistance if disconnected.
int distance(const LabeledGraph& g, int u, int v);

}  // namespace diffmc
