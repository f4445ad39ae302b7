#include "diffmc/difflocal.hpp"

#include <algorithm>

#include "diffmc/mc.hpp"

namespace diffmc {

nlohmann::json Coloring::to_json() const {
    nlohmann::json colors = nlohmann::json::object();
    for (const auto& [v, c] : assignments) colors[std::to_string(v)] = c;
    return {{"colors", colors}};
}

Coloring Coloring::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("colors") || !j["colors"].is_object()) {
        throw InputError("coloring json must be {\"colors\": {\"<vertex>\": int}}");
    }
    Coloring c;
    for (auto it = j["colors"].begin(); it != j["colors"].end(); ++it) {
        size_t pos = 0;
        int v;
        try {
            v = std::stoi(it.key(), &pos);
        } catch (const std::exception&) {
            throw InputError("bad vertex key \"" + it.key() + "\" in coloring");
        }
        if (pos != it.key().size() || v < 0) {
            throw InputError("bad vertex key \"" + it.key() + "\" in coloring");
        }
        c.assignments[v] = it.value().get<int>();
    }
    return c;
}

LabeledGraph apply_coloring(const LabeledGraph& g, const Coloring& c) {
    for (const auto& [v, color] : c.assignments) {
        g.check_vertex(v);
        if (color < 0) throw InputError("colors must be nonnegative");
    }
    LabeledGraph out = g;
    for (int v = 0; v < g.size(); ++v) {
        auto it = c.assignments.find(v);
        if (it == c.assignments.end()) {
            throw InputError("coloring misses vertex " + std::to_string(v));
        }
        out.set_color(v, it->second);
    }
    return out;
}

Coloring uniform_coloring(const LabeledGraph& g) {
    Coloring c;
    for (int v = 0; v < g.size(); ++v) c.assignments[v] = 0;
    return c;
}

Coloring atomic_type_coloring(const LabeledGraph& g) {
    std::vector<std::string> keys(g.size());
    for (int v = 0; v < g.size(); ++v) {
        for (const auto& lab : g.effective_labels(v)) {
            keys[v] += lab;
            keys[v] += '\x1f';
        }
    }
    std::vector<std::string> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    Coloring c;
    for (int v = 0; v < g.size(); ++v) {
        c.assignments[v] = static_cast<int>(
            std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
    }
    return c;
}

nlohmann::json DnCensusReport::to_json() const {
    nlohmann::json pair_rows = nlohmann::json::array();
    for (const auto& row : rows) {
        pair_rows.push_back(
            {{"u", row.u}, {"v", row.v}, {"dn_size", row.dn_size}, {"agree", row.agree}});
    }
    return {{"r", r},
            {"pairs", pair_rows},
            {"aggregate",
             {{"max_dn", max_dn}, {"mean_dn", mean_dn}, {"disagreements", disagreements}}}};
}

DnCensusReport dn_census(const LabeledGraph& g, int r) {
    if (!g.fully_colored()) throw InputError("dn_census requires a colored graph");
    if (r < 1) throw InputError("dn_census requires r >= 1");
    DnCensusReport report;
    report.r = r;
    long long size_sum = 0;
    for (int u = 0; u < g.size(); ++u) {
        for (int v = u + 1; v < g.size(); ++v) {
            if (g.color(u) != g.color(v)) continue;
            VertexSet dn = differential_neighborhood(g, u, v, r, /*closed=*/true);
            Winner local = difflocal_winner(g, u, v, r, DiffLocalMode::Direct);
            Winner full = d_winner(g, {u}, {v}, r);
            bool agree = local == full;
            if (!agree) ++report.disagreements;
            report.rows.push_back({u, v, dn.size(), agree});
            report.max_dn = std::max(report.max_dn, dn.size());
            size_sum += dn.size();
        }
    }
    if (!report.rows.empty()) {
        report.mean_dn = static_cast<double>(size_sum) / static_cast<double>(report.rows.size());
    }
    return report;
}

}  // namespace diffmc
