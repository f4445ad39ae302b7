#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "diffmc/games.hpp"
#include "diffmc/graph.hpp"

namespace diffmc {

// Vertex coloring supplied externally; the library validates and consumes
// colorings but never synthesizes any beyond the two presets below.
struct Coloring {
    std::map<int, int> assignments;  // vertex -> color

    nlohmann::json to_json() const;
    static Coloring from_json(const nlohmann::json& j);
};

// Installs the coloring; every vertex must be assigned a color in range.
LabeledGraph apply_coloring(const LabeledGraph& g, const Coloring& c);

Coloring uniform_coloring(const LabeledGraph& g);
// One color per distinct effective label set, ordered lexicographically.
Coloring atomic_type_coloring(const LabeledGraph& g);

struct DnCensusRow {
    int u;
    int v;
    int dn_size;  // |DN_r[u,v]| (closed)
    bool agree;   // difflocal_winner(direct) == full-graph d_winner
};

struct DnCensusReport {
    int r = 0;
    std::vector<DnCensusRow> rows;
    int max_dn = 0;
    double mean_dn = 0.0;
    int disagreements = 0;

    nlohmann::json to_json() const;
};

// For every same-colored pair u < v: closed DN_r size and the agreement flag
// between the DN-local game and the full-graph game. A disagreement is a bug
// in one of the two, not data.
DnCensusReport dn_census(const LabeledGraph& g, int r);

}  // namespace diffmc
