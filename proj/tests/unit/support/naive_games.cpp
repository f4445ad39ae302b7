#include "naive_games.hpp"

namespace diffmc::testing {

namespace {

bool end_iso(const LabeledGraph& g, const std::vector<int>& a, const LabeledGraph& h,
             const std::vector<int>& b) {
    return partial_iso(g, a, h, b);
}

Winner naive_ef_rec(const LabeledGraph& g, std::vector<int>& a, const LabeledGraph& h,
                    std::vector<int>& b, int rounds) {
    if (rounds == 0) return end_iso(g, a, h, b) ? Winner::Duplicator : Winner::Spoiler;
    bool any_move = false;
    for (int side = 0; side < 2; ++side) {
        const int spoiler_n = side == 0 ? g.size() : h.size();
        const int reply_n = side == 0 ? h.size() : g.size();
        for (int v = 0; v < spoiler_n; ++v) {
            any_move = true;
            bool escapes = false;
            for (int u = 0; u < reply_n; ++u) {
                a.push_back(side == 0 ? v : u);
                b.push_back(side == 0 ? u : v);
                Winner sub = naive_ef_rec(g, a, h, b, rounds - 1);
                a.pop_back();
                b.pop_back();
                if (sub == Winner::Duplicator) {
                    escapes = true;
                    break;
                }
            }
            if (!escapes) return Winner::Spoiler;
        }
    }
    if (!any_move) return end_iso(g, a, h, b) ? Winner::Duplicator : Winner::Spoiler;
    return Winner::Duplicator;
}

Winner naive_diff_rec(const LabeledGraph& g, std::vector<int>& a, std::vector<int>& b, int rounds,
                      bool dup_restricted) {
    if (rounds == 0) return end_iso(g, a, g, b) ? Winner::Duplicator : Winner::Spoiler;
    bool any_move = false;
    for (size_t i = 0; i < a.size(); ++i) {
        const Bitset diff = g.neighbors(a[i]) ^ g.neighbors(b[i]);
        for (int side = 0; side < 2; ++side) {
            for (auto v = diff.find_first(); v != Bitset::npos; v = diff.find_next(v)) {
                any_move = true;
                bool escapes = false;
                auto try_reply = [&](int u) {
                    a.push_back(side == 0 ? static_cast<int>(v) : u);
                    b.push_back(side == 0 ? u : static_cast<int>(v));
                    Winner sub = naive_diff_rec(g, a, b, rounds - 1, dup_restricted);
                    a.pop_back();
                    b.pop_back();
                    return sub == Winner::Duplicator;
                };
                if (dup_restricted) {
                    for (auto u = diff.find_first(); u != Bitset::npos; u = diff.find_next(u)) {
                        if (try_reply(static_cast<int>(u))) {
                            escapes = true;
                            break;
                        }
                    }
                } else {
                    for (int u = 0; u < g.size(); ++u) {
                        if (try_reply(u)) {
                            escapes = true;
                            break;
                        }
                    }
                }
                if (!escapes) return Winner::Spoiler;
            }
        }
    }
    if (!any_move) return end_iso(g, a, g, b) ? Winner::Duplicator : Winner::Spoiler;
    return Winner::Duplicator;
}

}  // namespace

Winner naive_ef(const LabeledGraph& g, const std::vector<int>& a, const LabeledGraph& h,
                const std::vector<int>& b, int rounds) {
    std::vector<int> av = a, bv = b;
    return naive_ef_rec(g, av, h, bv, rounds);
}

Winner naive_diff(const LabeledGraph& g, const std::vector<int>& a, const std::vector<int>& b,
                  int rounds, bool duplicator_restricted) {
    std::vector<int> av = a, bv = b;
    return naive_diff_rec(g, av, bv, rounds, duplicator_restricted);
}

}  // namespace diffmc::testing
