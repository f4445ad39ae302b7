#include "diffmc/games.hpp"

#include <algorithm>

namespace diffmc {

std::string to_string(Winner w) { return w == Winner::Spoiler ? "Spoiler" : "Duplicator"; }

std::string to_string(GameKind k) {
    switch (k) {
        case GameKind::EF: return "ef";
        case GameKind::SD: return "sd";
        case GameKind::D: return "d";
    }
    return "?";
}

namespace {

std::string position_key(const std::vector<int>& a, const std::vector<int>& b, int rounds) {
    std::string key;
    key.reserve(2 + 4 * a.size());
    key.push_back(static_cast<char>(rounds & 0xff));
    key.push_back(static_cast<char>((rounds >> 8) & 0xff));
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

bool tuple_iso(const LabeledGraph& g, const std::vector<int>& a, const std::vector<int>& aid,
               const LabeledGraph& h, const std::vector<int>& b, const std::vector<int>& bid) {
    const size_t k = a.size();
    for (size_t i = 0; i < k; ++i) {
        if (aid[a[i]] != bid[b[i]]) return false;
    }
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = i + 1; j < k; ++j) {
            if ((a[i] == a[j]) != (b[i] == b[j])) return false;
            if (g.neighbors(a[i]).test(a[j]) != h.neighbors(b[i]).test(b[j])) return false;
        }
    }
    return true;
}

void validate_tuples(const LabeledGraph& g, const std::vector<int>& a, const LabeledGraph& h,
                     const std::vector<int>& b, int rounds) {
    if (a.size() != b.size()) throw InputError("tuples must have equal length");
    if (rounds < 0) throw InputError("rounds must be nonnegative");
    for (int v : a) g.check_vertex(v);
    for (int v : b) h.check_vertex(v);
}

}  // namespace

bool partial_iso(const LabeledGraph& g, const std::vector<int>& a, const LabeledGraph& h,
                 const std::vector<int>& b) {
    validate_tuples(g, a, h, b, 0);
    auto [aid, bid] = joint_atomic_type_ids(g, h);
    return tuple_iso(g, a, aid, h, b, bid);
}

// ---------------------------------------------------------------------------
// EF game
// ---------------------------------------------------------------------------

EfGameSolver::EfGameSolver(const LabeledGraph& g, const LabeledGraph& h) : g_(g), h_(h) {
    auto ids = joint_atomic_type_ids(g, h);
    ga_ids_ = std::move(ids.first);
    hb_ids_ = std::move(ids.second);
}

bool EfGameSolver::iso(const std::vector<int>& a, const std::vector<int>& b) const {
    return tuple_iso(g_, a, ga_ids_, h_, b, hb_ids_);
}

Winner EfGameSolver::winner(const std::vector<int>& a, const std::vector<int>& b, int rounds) {
    validate_tuples(g_, a, h_, b, rounds);
    std::vector<int> av = a, bv = b;
    return solve(av, bv, rounds);
}

Winner EfGameSolver::solve(std::vector<int>& a, std::vector<int>& b, int rounds) {
    if (!iso(a, b)) return Winner::Spoiler;
    if (rounds == 0) return Winner::Duplicator;
    const std::string key = position_key(a, b, rounds);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    Winner result = Winner::Duplicator;
    for (int side = 0; side < 2 && result == Winner::Duplicator; ++side) {
        const int spoiler_n = side == 0 ? g_.size() : h_.size();
        const int reply_n = side == 0 ? h_.size() : g_.size();
        for (int v = 0; v < spoiler_n && result == Winner::Duplicator; ++v) {
            bool escapes = false;
            for (int u = 0; u < reply_n; ++u) {
                a.push_back(side == 0 ? v : u);
                b.push_back(side == 0 ? u : v);
                Winner sub = solve(a, b, rounds - 1);
                a.pop_back();
                b.pop_back();
                if (sub == Winner::Duplicator) {
                    escapes = true;
                    break;
                }
            }
            if (!escapes) result = Winner::Spoiler;
        }
    }
    memo_.emplace(key, result);
    return result;
}

// ---------------------------------------------------------------------------
// Semi-differential / differential games
// ---------------------------------------------------------------------------

DiffGameSolver::DiffGameSolver(const LabeledGraph& g, GameKind kind)
    : g_(g), dup_restricted_(kind == GameKind::D), ids_(atomic_type_ids(g)) {
    if (kind == GameKind::EF) throw InputError("DiffGameSolver handles SD and D games");
}

bool DiffGameSolver::iso(const std::vector<int>& a, const std::vector<int>& b) const {
    return tuple_iso(g_, a, ids_, g_, b, ids_);
}

Winner DiffGameSolver::winner(const std::vector<int>& a, const std::vector<int>& b, int rounds) {
    validate_tuples(g_, a, g_, b, rounds);
    if (a.empty()) throw InputError("differential games require nonempty starting tuples");
    std::vector<int> av = a, bv = b;
    return solve(av, bv, rounds);
}

Winner DiffGameSolver::solve(std::vector<int>& a, std::vector<int>& b, int rounds) {
    if (!iso(a, b)) return Winner::Spoiler;
    if (rounds == 0) return Winner::Duplicator;
    const std::string key = position_key(a, b, rounds);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    Winner result = Winner::Duplicator;
    const size_t k = a.size();
    for (size_t i = 0; i < k && result == Winner::Duplicator; ++i) {
        const Bitset diff = g_.neighbors(a[i]) ^ g_.neighbors(b[i]);
        if (diff.none()) continue;
        for (int side = 0; side < 2 && result == Winner::Duplicator; ++side) {
            for (auto v = diff.find_first(); v != Bitset::npos && result == Winner::Duplicator;
                 v = diff.find_next(v)) {
                const int move = static_cast<int>(v);
                bool escapes = false;
                auto try_reply = [&](int u) {
                    a.push_back(side == 0 ? move : u);
                    b.push_back(side == 0 ? u : move);
                    Winner sub = solve(a, b, rounds - 1);
                    a.pop_back();
                    b.pop_back();
                    return sub == Winner::Duplicator;
                };
                if (dup_restricted_) {
                    for (auto u = diff.find_first(); u != Bitset::npos; u = diff.find_next(u)) {
                        if (try_reply(static_cast<int>(u))) {
                            escapes = true;
                            break;
                        }
                    }
                } else {
                    for (int u = 0; u < g_.size(); ++u) {
                        if (try_reply(u)) {
                            escapes = true;
                            break;
                        }
                    }
                }
                if (!escapes) result = Winner::Spoiler;
            }
        }
    }
    memo_.emplace(key, result);
    return result;
}

Winner ef_winner(const LabeledGraph& g, const std::vector<int>& a, const LabeledGraph& h,
                 const std::vector<int>& b, int rounds) {
    EfGameSolver solver(g, h);
    return solver.winner(a, b, rounds);
}

Winner sd_winner(const LabeledGraph& g, const std::vector<int>& a, const std::vector<int>& b,
                 int rounds) {
    DiffGameSolver solver(g, GameKind::SD);
    return solver.winner(a, b, rounds);
}

Winner d_winner(const LabeledGraph& g, const std::vector<int>& a, const std::vector<int>& b,
                int rounds) {
    DiffGameSolver solver(g, GameKind::D);
    return solver.winner(a, b, rounds);
}

long long l_of(int m) {
    if (m < 0) throw InputError("l(m) requires m >= 0");
    if (m > 61) throw InputError("l(m) overflows for m > 61");
    long long l = 0;
    for (int i = 0; i < m; ++i) l = 2 * l + 1;
    return l;
}

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

std::vector<SpoilerMove> legal_spoiler_moves(GameKind kind, const LabeledGraph& g,
                                             const std::vector<int>& a,
                                             const std::vector<int>& b) {
    validate_tuples(g, a, g, b, 0);
    std::vector<SpoilerMove> moves;
    if (kind == GameKind::EF) {
        for (int side = 0; side < 2; ++side) {
            for (int v = 0; v < g.size(); ++v) moves.push_back({-1, v, side == 0});
        }
        return moves;
    }
    for (size_t i = 0; i < a.size(); ++i) {
        const Bitset diff = g.neighbors(a[i]) ^ g.neighbors(b[i]);
        for (int side = 0; side < 2; ++side) {
            for (auto v = diff.find_first(); v != Bitset::npos; v = diff.find_next(v)) {
                moves.push_back({static_cast<int>(i), static_cast<int>(v), side == 0});
            }
        }
    }
    // solver ordering: index ascending, side a-then-b, vertex ascending
    std::stable_sort(moves.begin(), moves.end(), [](const SpoilerMove& x, const SpoilerMove& y) {
        if (x.index_i != y.index_i) return x.index_i < y.index_i;
        if (x.a_side != y.a_side) return x.a_side;
        return x.vertex < y.vertex;
    });
    return moves;
}

nlohmann::json Transcript::to_json() const {
    nlohmann::json moves_json = nlohmann::json::array();
    for (const auto& m : moves) {
        moves_json.push_back({{"round", m.round},
                              {"player", m.player},
                              {"side", m.side},
                              {"index_i", m.index_i},
                              {"vertex", m.vertex},
                              {"legal", m.legal}});
    }
    nlohmann::json j{{"kind", to_string(kind)}, {"rounds", rounds}, {"moves", moves_json}};
    j["winner"] = winner ? nlohmann::json(to_string(*winner)) : nlohmann::json();
    if (error) j["error"] = *error;
    return j;
}

struct TraceRunner {
    GameKind kind;
    const LabeledGraph& g;
    const GameScripts& scripts;
    EfGameSolver ef_solver;
    DiffGameSolver* diff_solver;  // null for EF
    Transcript out;

    TraceRunner(GameKind kind_, const LabeledGraph& g_, const GameScripts& scripts_)
        : kind(kind_), g(g_), scripts(scripts_), ef_solver(g_, g_), diff_solver(nullptr) {}

    Winner solve(std::vector<int>& a, std::vector<int>& b, int r) {
        return kind == GameKind::EF ? ef_solver.solve(a, b, r) : diff_solver->solve(a, b, r);
    }

    bool iso(const std::vector<int>& a, const std::vector<int>& b) {
        return kind == GameKind::EF ? ef_solver.iso(a, b) : diff_solver->iso(a, b);
    }

    std::vector<int> duplicator_replies(const std::vector<int>& a, const std::vector<int>& b,
                                        const SpoilerMove& move) const {
        std::vector<int> replies;
        if (kind == GameKind::D) {
            const Bitset diff = g.neighbors(a[move.index_i]) ^ g.neighbors(b[move.index_i]);
            for (auto u = diff.find_first(); u != Bitset::npos; u = diff.find_next(u)) {
                replies.push_back(static_cast<int>(u));
            }
        } else {
            for (int u = 0; u < g.size(); ++u) replies.push_back(u);
        }
        return replies;
    }

    void run(std::vector<int> a, std::vector<int> b, int rounds) {
        out.kind = kind;
        out.rounds = rounds;
        auto record_position = [this](const std::vector<int>& av, const std::vector<int>& bv,
                                      int remaining) {
            out.final_position = GamePosition{av, bv, remaining, kind};
        };
        size_t spoiler_at = 0, dup_at = 0;
        int r = rounds;
        while (r > 0) {
            const int round_no = rounds - r + 1;
            if (!iso(a, b)) break;  // violated map persists; Spoiler has won
            auto legal = legal_spoiler_moves(kind, g, a, b);
            if (legal.empty()) break;  // stuck Spoiler, Duplicator holds

            SpoilerMove move{};
            if (scripts.spoiler && spoiler_at < scripts.spoiler->size()) {
                move = (*scripts.spoiler)[spoiler_at++];
                bool ok = std::any_of(legal.begin(), legal.end(), [&](const SpoilerMove& m) {
                    return m.index_i == move.index_i && m.vertex == move.vertex &&
                           m.a_side == move.a_side;
                });
                if (!ok) {
                    out.moves.push_back({round_no, "Spoiler", move.a_side ? "a" : "b",
                                         move.index_i, move.vertex, false});
                    out.error = kind == GameKind::EF ? "spoiler move out of range"
                                                     : "move not in any D(a_i,b_i)";
                    record_position(a, b, r);
                    return;
                }
            } else {
                move = legal.front();
                if (solve(a, b, r) == Winner::Spoiler) {
                    for (const auto& cand : legal) {
                        bool all_lose = true;
                        for (int u : duplicator_replies(a, b, cand)) {
                            a.push_back(cand.a_side ? cand.vertex : u);
                            b.push_back(cand.a_side ? u : cand.vertex);
                            Winner sub = solve(a, b, r - 1);
                            a.pop_back();
                            b.pop_back();
                            if (sub == Winner::Duplicator) {
                                all_lose = false;
                                break;
                            }
                        }
                        if (all_lose) {
                            move = cand;
                            break;
                        }
                    }
                }
            }
            out.moves.push_back(
                {round_no, "Spoiler", move.a_side ? "a" : "b", move.index_i, move.vertex, true});

            auto replies = duplicator_replies(a, b, move);
            int reply = -1;
            if (scripts.duplicator && dup_at < scripts.duplicator->size()) {
                reply = (*scripts.duplicator)[dup_at++];
                if (std::find(replies.begin(), replies.end(), reply) == replies.end()) {
                    out.moves.push_back({round_no, "Duplicator", move.a_side ? "b" : "a",
                                         move.index_i, reply, false});
                    out.error = kind == GameKind::D ? "reply not in D(a_i,b_i)"
                                                    : "reply out of range";
                    record_position(a, b, r);
                    return;
                }
            } else {
                if (replies.empty()) {
                    // only possible for EF on an empty opposite graph
                    out.winner = Winner::Spoiler;
                    record_position(a, b, r);
                    return;
                }
                reply = replies.front();
                for (int u : replies) {
                    a.push_back(move.a_side ? move.vertex : u);
                    b.push_back(move.a_side ? u : move.vertex);
                    Winner sub = solve(a, b, r - 1);
                    a.pop_back();
                    b.pop_back();
                    if (sub == Winner::Duplicator) {
                        reply = u;
                        break;
                    }
                }
            }
            out.moves.push_back(
                {round_no, "Duplicator", move.a_side ? "b" : "a", move.index_i, reply, true});
            a.push_back(move.a_side ? move.vertex : reply);
            b.push_back(move.a_side ? reply : move.vertex);
            --r;
        }
        out.winner = iso(a, b) ? Winner::Duplicator : Winner::Spoiler;
        record_position(a, b, r);
    }
};

Transcript game_trace(GameKind kind, const LabeledGraph& g, std::vector<int> a, std::vector<int> b,
                      int rounds, const GameScripts& scripts) {
    validate_tuples(g, a, g, b, rounds);
    if (kind != GameKind::EF && a.empty()) {
        throw InputError("differential games require nonempty starting tuples");
    }
    TraceRunner runner(kind, g, scripts);
    DiffGameSolver diff(g, kind == GameKind::EF ? GameKind::D : kind);
    runner.diff_solver = &diff;
    runner.run(std::move(a), std::move(b), rounds);
    return std::move(runner.out);
}

}  // namespace diffmc
