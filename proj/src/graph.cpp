#include "diffmc/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>

namespace diffmc {

VertexSet::VertexSet(std::initializer_list<int> vs) : VertexSet(std::vector<int>(vs)) {}

VertexSet::VertexSet(std::vector<int> vs) : values_(std::move(vs)) {
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
}

VertexSet VertexSet::from_bitset(const Bitset& bits) {
    VertexSet s;
    for (auto v = bits.find_first(); v != Bitset::npos; v = bits.find_next(v)) {
        s.values_.push_back(static_cast<int>(v));
    }
    return s;
}

bool VertexSet::contains(int v) const {
    return std::binary_search(values_.begin(), values_.end(), v);
}

void VertexSet::insert(int v) {
    auto it = std::lower_bound(values_.begin(), values_.end(), v);
    if (it == values_.end() || *it != v) values_.insert(it, v);
}

Bitset VertexSet::to_bitset(int n) const {
    Bitset b(n);
    for (int v : values_) b.set(v);
    return b;
}

VertexSet VertexSet::united(const VertexSet& other) const {
    std::vector<int> merged;
    merged.reserve(values_.size() + other.values_.size());
    std::merge(values_.begin(), values_.end(), other.values_.begin(), other.values_.end(),
               std::back_inserter(merged));
    return VertexSet(std::move(merged));
}

LabeledGraph::LabeledGraph(int n) {
    if (n < 0) throw InputError("graph size must be nonnegative");
    n_ = n;
    adj_.assign(n, Bitset(n));
    labels_.assign(n, {});
    colors_.assign(n, -1);
}

void LabeledGraph::check_vertex(int v) const {
    if (v < 0 || v >= n_) {
        throw InputError("vertex " + std::to_string(v) + " out of range for graph on " +
                         std::to_string(n_) + " vertices");
    }
}

void LabeledGraph::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw InputError("self-loops are not allowed");
    adj_[u].set(v);
    adj_[v].set(u);
}

bool LabeledGraph::adjacent(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return adj_[u].test(v);
}

const Bitset& LabeledGraph::neighbors(int v) const {
    check_vertex(v);
    return adj_[v];
}

VertexSet LabeledGraph::neighbor_set(int v) const {
    return VertexSet::from_bitset(neighbors(v));
}

int LabeledGraph::degree(int v) const {
    return static_cast<int>(neighbors(v).count());
}

int LabeledGraph::edge_count() const {
    int total = 0;
    for (const auto& row : adj_) total += static_cast<int>(row.count());
    return total / 2;
}

void LabeledGraph::add_label(int v, const std::string& label) {
    check_vertex(v);
    if (label.empty()) throw InputError("empty label");
    labels_[v].insert(label);
}

const std::set<std::string>& LabeledGraph::labels(int v) const {
    check_vertex(v);
    return labels_[v];
}

bool LabeledGraph::has_label(int v, const std::string& label) const {
    check_vertex(v);
    if (labels_[v].count(label)) return true;
    return colors_[v] >= 0 && label == "color:" + std::to_string(colors_[v]);
}

std::set<std::string> LabeledGraph::effective_labels(int v) const {
    check_vertex(v);
    std::set<std::string> out = labels_[v];
    if (colors_[v] >= 0) out.insert("color:" + std::to_string(colors_[v]));
    return out;
}

std::set<std::string> LabeledGraph::label_alphabet() const {
    std::set<std::string> out;
    for (int v = 0; v < n_; ++v) {
        auto eff = effective_labels(v);
        out.insert(eff.begin(), eff.end());
    }
    return out;
}

void LabeledGraph::set_color(int v, int color) {
    check_vertex(v);
    if (color < 0) throw InputError("colors must be nonnegative");
    colors_[v] = color;
}

void LabeledGraph::clear_colors() {
    std::fill(colors_.begin(), colors_.end(), -1);
}

std::optional<int> LabeledGraph::color(int v) const {
    check_vertex(v);
    if (colors_[v] < 0) return std::nullopt;
    return colors_[v];
}

bool LabeledGraph::fully_colored() const {
    if (n_ == 0) return true;
    return std::all_of(colors_.begin(), colors_.end(), [](int c) { return c >= 0; });
}

nlohmann::json LabeledGraph::to_json() const {
    nlohmann::json edges = nlohmann::json::array();
    for (int u = 0; u < n_; ++u) {
        for (auto v = adj_[u].find_next(u); v != Bitset::npos; v = adj_[u].find_next(v)) {
            edges.push_back({u, static_cast<int>(v)});
        }
    }
    nlohmann::json labels = nlohmann::json::object();
    for (int v = 0; v < n_; ++v) {
        if (!labels_[v].empty()) {
            labels[std::to_string(v)] = std::vector<std::string>(labels_[v].begin(), labels_[v].end());
        }
    }
    nlohmann::json colors = nlohmann::json::object();
    for (int v = 0; v < n_; ++v) {
        if (colors_[v] >= 0) colors[std::to_string(v)] = colors_[v];
    }
    return {{"n", n_}, {"edges", edges}, {"labels", labels}, {"colors", colors}};
}

namespace {

int parse_vertex_key(const std::string& key, int n) {
    size_t pos = 0;
    int v;
    try {
        v = std::stoi(key, &pos);
    } catch (const std::exception&) {
        throw InputError("bad vertex key \"" + key + "\"");
    }
    if (pos != key.size()) throw InputError("bad vertex key \"" + key + "\"");
    if (v < 0 || v >= n) throw InputError("vertex key " + key + " out of range");
    return v;
}

}  // namespace

LabeledGraph LabeledGraph::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
        throw InputError("graph json must be an object with integer \"n\"");
    }
    LabeledGraph g(j["n"].get<int>());
    if (j.contains("edges")) {
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2) throw InputError("edge entries must be pairs");
            g.add_edge(e[0].get<int>(), e[1].get<int>());
        }
    }
    if (j.contains("labels")) {
        for (auto it = j["labels"].begin(); it != j["labels"].end(); ++it) {
            int v = parse_vertex_key(it.key(), g.size());
            for (const auto& lab : it.value()) g.add_label(v, lab.get<std::string>());
        }
    }
    if (j.contains("colors")) {
        for (auto it = j["colors"].begin(); it != j["colors"].end(); ++it) {
            int v = parse_vertex_key(it.key(), g.size());
            g.set_color(v, it.value().get<int>());
        }
    }
    return g;
}

bool LabeledGraph::operator==(const LabeledGraph& other) const {
    return n_ == other.n_ && adj_ == other.adj_ && labels_ == other.labels_ &&
           colors_ == other.colors_;
}

namespace {

std::string label_set_key(const std::set<std::string>& labels) {
    std::string key;
    for (const auto& l : labels) {
        key += l;
        key += '\x1f';
    }
    return key;
}

}  // namespace

std::vector<int> atomic_type_ids(const LabeledGraph& g) {
    std::map<std::string, int> intern;
    std::vector<int> ids(g.size());
    for (int v = 0; v < g.size(); ++v) {
        auto key = label_set_key(g.effective_labels(v));
        auto [it, _] = intern.emplace(key, static_cast<int>(intern.size()));
        ids[v] = it->second;
    }
    return ids;
}

std::pair<std::vector<int>, std::vector<int>> joint_atomic_type_ids(const LabeledGraph& g,
                                                                    const LabeledGraph& h) {
    std::map<std::string, int> intern;
    auto assign = [&intern](const LabeledGraph& graph) {
        std::vector<int> ids(graph.size());
        for (int v = 0; v < graph.size(); ++v) {
            auto key = label_set_key(graph.effective_labels(v));
            auto [it, _] = intern.emplace(key, static_cast<int>(intern.size()));
            ids[v] = it->second;
        }
        return ids;
    };
    auto ga = assign(g);
    auto hb = assign(h);
    return {std::move(ga), std::move(hb)};
}

VertexSet sym_diff_neighborhood(const LabeledGraph& g, int u, int v) {
    g.check_vertex(u);
    g.check_vertex(v);
    return VertexSet::from_bitset(g.neighbors(u) ^ g.neighbors(v));
}

VertexSet differential_neighborhood(const LabeledGraph& g, int u, int v, int r, bool closed) {
    g.check_vertex(u);
    g.check_vertex(v);
    if (u == v) throw InputError("differential neighborhood requires u != v");
    if (r < 1) throw InputError("differential neighborhood requires r >= 1");
    if (!g.fully_colored()) throw InputError("differential neighborhood requires a colored graph");
    if (g.color(u) != g.color(v)) {
        throw UndefinedPairError("DN undefined: vertices " + std::to_string(u) + " and " +
                                 std::to_string(v) + " have different colors");
    }

    Bitset cur = g.neighbors(u) ^ g.neighbors(v);
    for (int step = 2; step <= r; ++step) {
        Bitset next = cur;
        std::vector<int> members;
        for (auto w = cur.find_first(); w != Bitset::npos; w = cur.find_next(w)) {
            members.push_back(static_cast<int>(w));
        }
        for (size_t i = 0; i < members.size(); ++i) {
            for (size_t j = i + 1; j < members.size(); ++j) {
                if (g.color(members[i]) != g.color(members[j])) continue;
                next |= g.neighbors(members[i]) ^ g.neighbors(members[j]);
            }
        }
        if (next == cur) break;  // fixpoint
        cur = std::move(next);
    }
    if (closed) {
        cur.set(u);
        cur.set(v);
    }
    return VertexSet::from_bitset(cur);
}

LabeledGraph make_path(int n) {
    if (n < 1) throw InputError("path requires n >= 1");
    LabeledGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

LabeledGraph make_cycle(int n) {
    if (n < 3) throw InputError("cycle requires n >= 3");
    LabeledGraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

LabeledGraph make_complete(int n) {
    if (n < 1) throw InputError("complete requires n >= 1");
    LabeledGraph g(n);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    }
    return g;
}

LabeledGraph make_half_graph(int n) {
    if (n < 1) throw InputError("half_graph requires n >= 1");
    LabeledGraph g(2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) g.add_edge(i, n + j);
    }
    return g;
}

std::pair<VertexSet, VertexSet> half_graph_sides(int n) {
    if (n < 1) throw InputError("half_graph requires n >= 1");
    std::vector<int> a, b;
    for (int i = 0; i < n; ++i) {
        a.push_back(i);
        b.push_back(n + i);
    }
    return {VertexSet(std::move(a)), VertexSet(std::move(b))};
}

LabeledGraph make_ladder(int n) {
    if (n < 1) throw InputError("ladder requires n >= 1");
    LabeledGraph g(2 * n);
    for (int i = 0; i + 1 < n; ++i) {
        g.add_edge(i, i + 1);
        g.add_edge(n + i, n + i + 1);
    }
    for (int i = 0; i < n; ++i) g.add_edge(i, n + i);
    return g;
}

LabeledGraph complement_of(const LabeledGraph& g) {
    LabeledGraph h(g.size());
    for (int u = 0; u < g.size(); ++u) {
        for (int v = u + 1; v < g.size(); ++v) {
            if (!g.adjacent(u, v)) h.add_edge(u, v);
        }
        for (const auto& lab : g.labels(u)) h.add_label(u, lab);
        if (auto c = g.color(u)) h.set_color(u, *c);
    }
    return h;
}

LabeledGraph make_erdos_renyi(int n, std::uint64_t seed, double p) {
    if (n < 0) throw InputError("erdos_renyi requires n >= 0");
    if (p < 0.0 || p > 1.0) throw InputError("edge probability must be in [0,1]");
    LabeledGraph g(n);
    std::mt19937_64 rng(seed);
    const double denom = static_cast<double>(1ull << 53);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            double draw = static_cast<double>(rng() >> 11) / denom;
            if (draw < p) g.add_edge(u, v);
        }
    }
    return g;
}

LabeledGraph generate(const std::string& kind, const std::vector<long>& params) {
    auto need = [&](size_t k) {
        if (params.size() < k) {
            throw InputError("generator \"" + kind + "\" needs " + std::to_string(k) +
                             " parameter(s)");
        }
    };
    if (kind == "path") {
        need(1);
        return make_path(static_cast<int>(params[0]));
    }
    if (kind == "cycle") {
        need(1);
        return make_cycle(static_cast<int>(params[0]));
    }
    if (kind == "complete") {
        need(1);
        return make_complete(static_cast<int>(params[0]));
    }
    if (kind == "half_graph") {
        need(1);
        return make_half_graph(static_cast<int>(params[0]));
    }
    if (kind == "ladder") {
        need(1);
        return make_ladder(static_cast<int>(params[0]));
    }
    if (kind == "erdos_renyi") {
        need(2);
        double p = 0.5;
        if (params.size() >= 3) p = static_cast<double>(params[2]) / 100.0;
        return make_erdos_renyi(static_cast<int>(params[0]), static_cast<std::uint64_t>(params[1]), p);
    }
    throw InputError("unknown graph kind \"" + kind + "\"");
}

void for_each_graph(int n, const std::function<void(const LabeledGraph&)>& fn) {
    if (n < 0) throw InputError("graph enumeration requires n >= 0");
    if (n > 7) throw InputError("graph enumeration capped at n = 7");
    const int pairs = n * (n - 1) / 2;
    const std::uint64_t total = 1ull << pairs;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        LabeledGraph g(n);
        int bit = 0;
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v, ++bit) {
                if (mask & (1ull << bit)) g.add_edge(u, v);
            }
        }
        fn(g);
    }
}

void for_each_graph_up_to(int n, const std::function<void(const LabeledGraph&)>& fn) {
    for (int k = 1; k <= n; ++k) for_each_graph(k, fn);
}

std::vector<LabeledGraph> all_graphs(int n) {
    std::vector<LabeledGraph> out;
    for_each_graph(n, [&out](const LabeledGraph& g) { out.push_back(g); });
    return out;
}

InducedSubgraph induced_subgraph(const LabeledGraph& g, const VertexSet& s) {
    for (int v : s) g.check_vertex(v);
    InducedSubgraph out{LabeledGraph(s.size()), std::vector<int>(g.size(), -1), s.values()};
    for (int i = 0; i < s.size(); ++i) out.to_sub[s.values()[i]] = i;
    for (int i = 0; i < s.size(); ++i) {
        int u = s.values()[i];
        for (int j = i + 1; j < s.size(); ++j) {
            if (g.adjacent(u, s.values()[j])) out.graph.add_edge(i, j);
        }
        for (const auto& lab : g.labels(u)) out.graph.add_label(i, lab);
        if (auto c = g.color(u)) out.graph.set_color(i, *c);
    }
    return out;
}

int distance(const LabeledGraph& g, int u, int v) {
    g.check_vertex(u);
    g.check_vertex(v);
    if (u == v) return 0;
    std::vector<int> dist(g.size(), -1);
    dist[u] = 0;
    std::deque<int> queue{u};
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        const Bitset& nb = g.neighbors(cur);
        for (auto w = nb.find_first(); w != Bitset::npos; w = nb.find_next(w)) {
            int wi = static_cast<int>(w);
            if (dist[wi] >= 0) continue;
            dist[wi] = dist[cur] + 1;
            if (wi == v) return dist[wi];
            queue.push_back(wi);
        }
    }
    return kInfiniteDistance;
}

}  // namespace diffmc
