#include "diffmc/mc.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace diffmc {

IsoType iso_type(const LabeledGraph& g, const std::vector<int>& tuple) {
    if (tuple.empty()) throw InputError("iso_type requires a nonempty tuple");
    for (int v : tuple) g.check_vertex(v);
    std::string key;
    // equality pattern: index of first occurrence
    for (size_t i = 0; i < tuple.size(); ++i) {
        size_t first = i;
        for (size_t j = 0; j < i; ++j) {
            if (tuple[j] == tuple[i]) {
                first = j;
                break;
            }
        }
        key += std::to_string(first);
        key += ',';
    }
    key += '|';
    for (size_t i = 0; i < tuple.size(); ++i) {
        for (size_t j = i + 1; j < tuple.size(); ++j) {
            key += g.adjacent(tuple[i], tuple[j]) ? '1' : '0';
        }
    }
    key += '|';
    for (int v : tuple) {
        key += '{';
        for (const auto& lab : g.effective_labels(v)) {
            key += lab;
            key += ';';
        }
        key += '}';
    }
    return IsoType{std::move(key)};
}

// ---------------------------------------------------------------------------
// Trees
// ---------------------------------------------------------------------------

EvalTree full_tree(const LabeledGraph& g, int height, long long node_guard) {
    if (height < 0) throw InputError("tree height must be nonnegative");
    long long nodes = 1, layer = 1;
    for (int d = 0; d < height; ++d) {
        layer *= g.size();
        nodes += layer;
        if (nodes > node_guard) throw InputError("full tree size guard exceeded");
    }
    EvalTree tree;
    tree.height = height;
    tree.nodes.reserve(static_cast<size_t>(nodes));
    tree.nodes.push_back({});
    // breadth-first so each layer is contiguous
    std::vector<int> frontier{0};
    for (int d = 0; d < height; ++d) {
        std::vector<int> next;
        next.reserve(frontier.size() * g.size());
        for (int idx : frontier) {
            for (int v = 0; v < g.size(); ++v) {
                tree.nodes.push_back({v, {}});
                int child = static_cast<int>(tree.nodes.size()) - 1;
                tree.nodes[idx].children.push_back(child);
                next.push_back(child);
            }
        }
        frontier = std::move(next);
    }
    return tree;
}

namespace {

// Matrix evaluator with variables resolved to prefix positions, so leaves
// avoid per-evaluation name lookups.
class CompiledMatrix {
public:
    CompiledMatrix(const FormulaPtr& matrix,
                   const std::vector<std::pair<Quantifier, std::string>>& prefix)
        : matrix_(matrix) {
        for (size_t i = 0; i < prefix.size(); ++i) slots_[prefix[i].second] = static_cast<int>(i);
    }

    bool eval(const LabeledGraph& g, const std::vector<int>& path) const {
        return eval_rec(g, *matrix_, path);
    }

private:
    int slot(const std::string& name) const {
        auto it = slots_.find(name);
        if (it == slots_.end()) throw InputError("matrix variable " + name + " not in prefix");
        return it->second;
    }

    bool eval_rec(const LabeledGraph& g, const Formula& f, const std::vector<int>& path) const {
        switch (f.kind) {
            case FormulaKind::True: return true;
            case FormulaKind::False: return false;
            case FormulaKind::Edge: {
                int a = path[slot(f.var1)], b = path[slot(f.var2)];
                return a != b && g.neighbors(a).test(b);
            }
            case FormulaKind::Eq: return path[slot(f.var1)] == path[slot(f.var2)];
            case FormulaKind::Label: return g.has_label(path[slot(f.var1)], f.label_name);
            case FormulaKind::Not: return !eval_rec(g, *f.lhs, path);
            case FormulaKind::And: return eval_rec(g, *f.lhs, path) && eval_rec(g, *f.rhs, path);
            case FormulaKind::Or: return eval_rec(g, *f.lhs, path) || eval_rec(g, *f.rhs, path);
            case FormulaKind::Implies:
                return !eval_rec(g, *f.lhs, path) || eval_rec(g, *f.rhs, path);
            case FormulaKind::Iff: return eval_rec(g, *f.lhs, path) == eval_rec(g, *f.rhs, path);
            default: throw InputError("prenex matrix must be quantifier-free");
        }
    }

    FormulaPtr matrix_;
    std::map<std::string, int> slots_;
};

int tree_depth_check(const EvalTree& tree, int node, int depth) {
    if (tree.nodes[node].children.empty()) return depth;
    int leaf_depth = -1;
    for (int child : tree.nodes[node].children) {
        int d = tree_depth_check(tree, child, depth + 1);
        if (leaf_depth == -1) leaf_depth = d;
        if (d != leaf_depth) throw InputError("evaluation tree has leaves at mixed depths");
    }
    return leaf_depth;
}

}  // namespace

bool verdict_from_tree(const EvalTree& tree, const LabeledGraph& g, const PrenexSentence& ps) {
    if (tree.nodes.empty()) throw InputError("empty evaluation tree");
    const int q = ps.quantifier_count();
    if (tree.height != q || tree_depth_check(tree, 0, 0) != q) {
        throw InputError("tree height does not match the quantifier prefix");
    }
    CompiledMatrix matrix(ps.matrix, ps.prefix);
    std::vector<int> path(q, 0);

    std::function<bool(int, int)> rec = [&](int node, int depth) -> bool {
        if (depth == q) return matrix.eval(g, path);
        const bool universal = ps.prefix[depth].first == Quantifier::Forall;
        for (int child : tree.nodes[node].children) {
            path[depth] = tree.nodes[child].vertex;
            bool sub = rec(child, depth + 1);
            if (universal && !sub) return false;
            if (!universal && sub) return true;
        }
        return universal;
    };
    return rec(0, 0);
}

bool full_tree_mc(const LabeledGraph& g, const PrenexSentence& ps, long long position_guard) {
    const int q = ps.quantifier_count();
    long long positions = 1;
    for (int i = 0; i < q; ++i) {
        positions *= std::max(1, g.size());
        if (positions > position_guard) throw InputError("full tree size guard exceeded");
    }
    CompiledMatrix matrix(ps.matrix, ps.prefix);
    std::vector<int> path(q, 0);
    std::function<bool(int)> rec = [&](int depth) -> bool {
        if (depth == q) return matrix.eval(g, path);
        const bool universal = ps.prefix[depth].first == Quantifier::Forall;
        for (int v = 0; v < g.size(); ++v) {
            path[depth] = v;
            bool sub = rec(depth + 1);
            if (universal && !sub) return false;
            if (!universal && sub) return true;
        }
        return universal;
    };
    return rec(0);
}

std::string full_gq_label(const LabeledGraph& g, const std::vector<int>& path, int q) {
    if (static_cast<int>(path.size()) > q) throw InputError("path longer than tree height");
    if (static_cast<int>(path.size()) == q) return iso_type(g, path).key;
    std::set<std::string> child_labels;
    std::vector<int> extended = path;
    extended.push_back(0);
    for (int v = 0; v < g.size(); ++v) {
        extended.back() = v;
        child_labels.insert(full_gq_label(g, extended, q));
    }
    std::string out = "{";
    for (const auto& l : child_labels) {
        out += l;
        out += '#';
    }
    out += '}';
    return out;
}

EvalTree reduced_tree(const LabeledGraph& g, int q, const RepresentativeFn& rep_fn,
                      ReducedTreeStats* stats) {
    if (q < 0) throw InputError("quantifier count must be nonnegative");
    if (!rep_fn) throw InputError("reduced_tree needs a representative oracle");
    EvalTree tree;
    tree.height = q;
    tree.nodes.push_back({});
    if (stats) {
        stats->level_max_branching.assign(q, 0);
        stats->rep_calls = 0;
    }
    std::vector<int> path;
    std::function<void(int, int)> build = [&](int node, int depth) {
        if (depth == q) return;
        const int p = depth == 0 ? q - 1 : q - depth;
        VertexSet reps = rep_fn(g, path, p);
        if (stats) {
            ++stats->rep_calls;
            stats->level_max_branching[depth] =
                std::max(stats->level_max_branching[depth], reps.size());
        }
        for (int w : reps) {
            tree.nodes.push_back({w, {}});
            int child = static_cast<int>(tree.nodes.size()) - 1;
            tree.nodes[node].children.push_back(child);
            path.push_back(w);
            build(child, depth + 1);
            path.pop_back();
        }
    };
    build(0, 0);
    return tree;
}

Engine engine_from_string(const std::string& s) {
    if (s == "brute") return Engine::Brute;
    if (s == "difftree") return Engine::Difftree;
    throw InputError("unknown engine \"" + s + "\" (expected brute or difftree)");
}

ModelCheckResult model_check(const LabeledGraph& g, const Formula& sentence,
                             const ModelCheckOptions& options) {
    if (!is_sentence(sentence)) throw InputError("model_check requires a sentence");

    ModelCheckResult result;
    if (options.engine == Engine::Brute) {
        result.verdict = evaluate(g, sentence);
        result.diagnostics = {{"engine", "brute"},
                              {"tree_nodes", 0},
                              {"level_branching", nlohmann::json::array()},
                              {"relation_calls", 0},
                              {"verdict", result.verdict}};
        return result;
    }

    PrenexSentence ps = to_prenex(sentence);
    const int q = ps.quantifier_count();

    if (g.size() == 0) {
        // no assignments: the outermost quantifier decides
        bool verdict = q == 0 ? full_tree_mc(g, ps, options.full_tree_guard)
                              : ps.prefix.front().first == Quantifier::Forall;
        result.verdict = verdict;
        result.diagnostics = {{"engine", "difftree"},
                              {"tree_nodes", 1},
                              {"level_branching", nlohmann::json::array()},
                              {"relation_calls", 0},
                              {"verdict", verdict}};
        return result;
    }

    const int threads = std::max(1, options.threads);
    RepresentativeFn base =
        options.rep_fn ? options.rep_fn
                       : [threads](const LabeledGraph& graph, const std::vector<int>& tuple,
                                   int p) {
                             return representatives(graph, tuple, p,
                                                    RepresentativeMode::IndependentSet, threads);
                         };
    RepresentativeFn rep = base;
    long long relation_calls = 0;
    if (options.cache) {
        RepCache* cache = options.cache;
        rep = [base, cache, &relation_calls](const LabeledGraph& graph,
                                             const std::vector<int>& tuple, int p) {
            auto key = std::make_pair(tuple, p);
            if (auto it = cache->entries.find(key); it != cache->entries.end()) {
                ++cache->hits;
                return it->second;
            }
            ++cache->misses;
            ++relation_calls;
            auto reps = base(graph, tuple, p);
            cache->entries.emplace(std::move(key), reps);
            return reps;
        };
    } else {
        rep = [base, &relation_calls](const LabeledGraph& graph, const std::vector<int>& tuple,
                                      int p) {
            ++relation_calls;
            return base(graph, tuple, p);
        };
    }

    ReducedTreeStats stats;
    EvalTree tree = reduced_tree(g, q, rep, &stats);
    result.verdict = verdict_from_tree(tree, g, ps);
    result.diagnostics = {{"engine", "difftree"},
                          {"tree_nodes", tree.node_count()},
                          {"level_branching", stats.level_max_branching},
                          {"relation_calls", relation_calls},
                          {"verdict", result.verdict}};
    return result;
}

Winner difflocal_winner(const LabeledGraph& g, int u, int v, int r, DiffLocalMode mode) {
    g.check_vertex(u);
    g.check_vertex(v);
    if (!g.fully_colored()) throw InputError("difflocal_winner requires a colored graph");
    if (g.color(u) != g.color(v)) {
        throw UndefinedPairError("difflocal_winner requires c(u) = c(v)");
    }
    VertexSet dn = differential_neighborhood(g, u, v, r, /*closed=*/true);
    InducedSubgraph sub = induced_subgraph(g, dn);
    const int su = sub.to_sub[u], sv = sub.to_sub[v];
    if (mode == DiffLocalMode::Direct) {
        return d_winner(sub.graph, {su}, {sv}, r);
    }
    FormulaPtr xi = xi_formula(r, 1, sub.graph.label_alphabet());
    bool dup = evaluate(sub.graph, xi, {{"x1", su}, {"y1", sv}});
    return dup ? Winner::Duplicator : Winner::Spoiler;
}

}  // namespace diffmc
