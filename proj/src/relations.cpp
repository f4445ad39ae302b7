#include "diffmc/relations.hpp"

#include <algorithm>
#include <map>
#include <thread>
#include <unordered_map>

#include "diffmc/formula.hpp"

namespace diffmc {

std::string to_string(RelationKind k) {
    switch (k) {
        case RelationKind::DGame: return "d_game";
        case RelationKind::SdGame: return "sd_game";
        case RelationKind::EfGame: return "ef_game";
        case RelationKind::FoType: return "fo_type";
    }
    return "?";
}

RelationKind relation_kind_from_string(const std::string& s) {
    if (s == "d_game" || s == "d") return RelationKind::DGame;
    if (s == "sd_game" || s == "sd") return RelationKind::SdGame;
    if (s == "ef_game" || s == "ef") return RelationKind::EfGame;
    if (s == "fo_type") return RelationKind::FoType;
    throw InputError("unknown relation kind \"" + s + "\"");
}

RelationGraph::RelationGraph(int n, std::string kind, int rounds)
    : n_(n), kind_(std::move(kind)), rounds_(rounds), rows_(n, Bitset(n)) {
    if (n < 0) throw InputError("relation size must be nonnegative");
    for (int v = 0; v < n; ++v) rows_[v].set(v);
}

void RelationGraph::set_related(int u, int v) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) throw InputError("relation vertex out of range");
    rows_[u].set(v);
    rows_[v].set(u);
}

bool RelationGraph::related(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) throw InputError("relation vertex out of range");
    return rows_[u].test(v);
}

const Bitset& RelationGraph::row(int v) const {
    if (v < 0 || v >= n_) throw InputError("relation vertex out of range");
    return rows_[v];
}

nlohmann::json RelationGraph::to_json() const {
    nlohmann::json pairs = nlohmann::json::array();
    for (int u = 0; u < n_; ++u) {
        for (auto v = rows_[u].find_next(u); v != Bitset::npos; v = rows_[u].find_next(v)) {
            pairs.push_back({u, static_cast<int>(v)});
        }
    }
    return {{"n", n_}, {"kind", kind_}, {"rounds", rounds_}, {"pairs", pairs}};
}

// ---------------------------------------------------------------------------
// FO type equivalence (back-and-forth)
// ---------------------------------------------------------------------------

namespace {

std::string type_key(const std::vector<int>& a, const std::vector<int>& b, int q) {
    std::string key;
    key.reserve(2 + 4 * a.size());
    key.push_back(static_cast<char>(q & 0xff));
    key.push_back(static_cast<char>((q >> 8) & 0xff));
    for (int v : a) {
        key.push_back(static_cast<char>(v & 0xff));
        key.push_back(static_cast<char>((v >> 8) & 0xff));
    }
    for (int v : b) {
        key.push_back(static_cast<char>(v & 0xff));
        key.push_back(static_cast<char>((v >> 8) & 0xff));
    }
    return key;
}

class TypeEquivSolver {
public:
    explicit TypeEquivSolver(const LabeledGraph& g) : g_(g), ids_(atomic_type_ids(g)) {}

    bool equiv(std::vector<int>& a, std::vector<int>& b, int q) {
        if (!atomic_equal(a, b)) return false;
        if (q == 0) return true;
        const std::string key = type_key(a, b, q);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        bool result = true;
        // forth: every extension of a is matched by some extension of b
        for (int w = 0; w < g_.size() && result; ++w) {
            bool matched = false;
            for (int u = 0; u < g_.size(); ++u) {
                a.push_back(w);
                b.push_back(u);
                bool sub = equiv(a, b, q - 1);
                a.pop_back();
                b.pop_back();
                if (sub) {
                    matched = true;
                    break;
                }
            }
            if (!matched) result = false;
        }
        // back: symmetric
        for (int u = 0; u < g_.size() && result; ++u) {
            bool matched = false;
            for (int w = 0; w < g_.size(); ++w) {
                a.push_back(w);
                b.push_back(u);
                bool sub = equiv(a, b, q - 1);
                a.pop_back();
                b.pop_back();
                if (sub) {
                    matched = true;
                    break;
                }
            }
            if (!matched) result = false;
        }
        memo_.emplace(key, result);
        return result;
    }

private:
    bool atomic_equal(const std::vector<int>& a, const std::vector<int>& b) const {
        const size_t k = a.size();
        for (size_t i = 0; i < k; ++i) {
            if (ids_[a[i]] != ids_[b[i]]) return false;
        }
        for (size_t i = 0; i < k; ++i) {
            for (size_t j = i + 1; j < k; ++j) {
                if ((a[i] == a[j]) != (b[i] == b[j])) return false;
                if (g_.neighbors(a[i]).test(a[j]) != g_.neighbors(b[i]).test(b[j])) return false;
            }
        }
        return true;
    }

    const LabeledGraph& g_;
    std::vector<int> ids_;
    std::unordered_map<std::string, bool> memo_;
};

}  // namespace

bool fo_type_equiv(const LabeledGraph& g, const std::vector<int>& a, const std::vector<int>& b,
                   int q) {
    if (a.size() != b.size()) throw InputError("tuples must have equal length");
    if (q < 0) throw InputError("q must be nonnegative");
    for (int v : a) g.check_vertex(v);
    for (int v : b) g.check_vertex(v);
    TypeEquivSolver solver(g);
    std::vector<int> av = a, bv = b;
    return solver.equiv(av, bv, q);
}

// ---------------------------------------------------------------------------
// Relation graphs
// ---------------------------------------------------------------------------

RelationGraph relation_graph(const LabeledGraph& g, RelationKind kind, int rounds, int threads) {
    if (rounds < 0) throw InputError("rounds must be nonnegative");
    const int n = g.size();
    RelationGraph rel(n, to_string(kind), rounds);

    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    }
    std::vector<char> related(pairs.size(), 0);

    auto worker = [&](size_t begin, size_t end) {
        // one solver per worker so the memo is shared across its pairs
        std::optional<DiffGameSolver> diff;
        std::optional<EfGameSolver> ef;
        std::optional<TypeEquivSolver> types;
        switch (kind) {
            case RelationKind::DGame: diff.emplace(g, GameKind::D); break;
            case RelationKind::SdGame: diff.emplace(g, GameKind::SD); break;
            case RelationKind::EfGame: ef.emplace(g, g); break;
            case RelationKind::FoType: types.emplace(g); break;
        }
        for (size_t idx = begin; idx < end; ++idx) {
            auto [u, v] = pairs[idx];
            std::vector<int> a{u}, b{v};
            bool rel_uv = false;
            switch (kind) {
                case RelationKind::DGame:
                case RelationKind::SdGame:
                    rel_uv = diff->winner(a, b, rounds) == Winner::Duplicator;
                    break;
                case RelationKind::EfGame:
                    rel_uv = ef->winner(a, b, rounds) == Winner::Duplicator;
                    break;
                case RelationKind::FoType:
                    rel_uv = types->equiv(a, b, rounds);
                    break;
            }
            related[idx] = rel_uv ? 1 : 0;
        }
    };

    const int worker_count = std::max(1, std::min<int>(threads, static_cast<int>(pairs.size())));
    if (worker_count <= 1) {
        worker(0, pairs.size());
    } else {
        std::vector<std::thread> pool;
        const size_t chunk = (pairs.size() + worker_count - 1) / worker_count;
        for (int t = 0; t < worker_count; ++t) {
            size_t begin = t * chunk;
            size_t end = std::min(pairs.size(), begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    for (size_t idx = 0; idx < pairs.size(); ++idx) {
        if (related[idx]) rel.set_related(pairs[idx].first, pairs[idx].second);
    }
    return rel;
}

// ---------------------------------------------------------------------------
// Components and independent sets
// ---------------------------------------------------------------------------

namespace {

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }

    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void merge(int x, int y) {
        int rx = find(x), ry = find(y);
        if (rx == ry) return;
        if (rx > ry) std::swap(rx, ry);
        parent[ry] = rx;  // smaller id wins, keeps component ids stable
    }
};

}  // namespace

std::vector<std::vector<int>> components(const RelationGraph& r) {
    UnionFind uf(r.size());
    for (int u = 0; u < r.size(); ++u) {
        const Bitset& row = r.row(u);
        for (auto v = row.find_next(u); v != Bitset::npos; v = row.find_next(v)) {
            uf.merge(u, static_cast<int>(v));
        }
    }
    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < r.size(); ++v) groups[uf.find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    out.reserve(groups.size());
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

VertexSet greedy_mis(const RelationGraph& r) {
    std::vector<int> chosen;
    for (int v = 0; v < r.size(); ++v) {
        bool blocked = false;
        for (int w : chosen) {
            if (r.related(v, w)) {
                blocked = true;
                break;
            }
        }
        if (!blocked) chosen.push_back(v);
    }
    return VertexSet(std::move(chosen));
}

VertexSet representatives(const LabeledGraph& g, const std::vector<int>& tuple, int p,
                          RepresentativeMode mode, int threads) {
    if (p < 0) throw InputError("p must be nonnegative");
    for (int v : tuple) g.check_vertex(v);
    LabeledGraph pinned = pin_tuple_labels(g, tuple);
    RelationGraph rel =
        relation_graph(pinned, RelationKind::DGame, static_cast<int>(l_of(p)), threads);
    if (mode == RepresentativeMode::IndependentSet) return greedy_mis(rel);
    std::vector<int> reps;
    for (const auto& comp : components(rel)) reps.push_back(comp.front());
    return VertexSet(std::move(reps));
}

}  // namespace diffmc
