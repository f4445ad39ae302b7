#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "diffmc/graph.hpp"

namespace diffmc {

enum class Winner { Spoiler, Duplicator };
enum class GameKind { EF, SD, D };

std::string to_string(Winner w);
std::string to_string(GameKind k);

struct GamePosition {
    std::vector<int> a;
    std::vector<int> b;
    int rounds_remaining = 0;
    GameKind kind = GameKind::EF;
};

// Label-preserving partial isomorphism a_i -> b_i: well-defined and injective
// on the tuple pattern, adjacency-preserving both ways, equal effective label
// sets (colors included).
bool partial_iso(const LabeledGraph& g, const std::vector<int>& a, const LabeledGraph& h,
                 const std::vector<int>& b);

// Memoized minimax for the m-round EF game between (g, a) and (h, b). Spoiler
// picks a side and a vertex each round, Duplicator answers on the other side.
// A position whose partial map already violates partial_iso is an immediate
// Spoiler win; violations persist, so this matches end-of-game checking.
class EfGameSolver {
public:
    EfGameSolver(const LabeledGraph& g, const LabeledGraph& h);
    Winner winner(const std::vector<int>& a, const std::vector<int>& b, int rounds);

private:
    friend struct TraceRunner;
    Winner solve(std::vector<int>& a, std::vector<int>& b, int rounds);
    bool iso(const std::vector<int>& a, const std::vector<int>& b) const;

    const LabeledGraph& g_;
    const LabeledGraph& h_;
    std::vector<int> ga_ids_;
    std::vector<int> hb_ids_;
    std::unordered_map<std::string, Winner> memo_;
};

// Memoized minimax for the semi-differential (Duplicator unrestricted) and
// differential (Duplicator restricted to the same D(a_i,b_i)) games on one
// graph. Spoiler must play inside some D(a_i,b_i); with no such vertex at
// Spoiler's turn the Duplicator wins the still-isomorphic position.
class DiffGameSolver {
public:
    DiffGameSolver(const LabeledGraph& g, GameKind kind);
    Winner winner(const std::vector<int>& a, const std::vector<int>& b, int rounds);

private:
    friend struct TraceRunner;
    Winner solve(std::vector<int>& a, std::vector<int>& b, int rounds);
    bool iso(const std::vector<int>& a, const std::vector<int>& b) const;

    const LabeledGraph& g_;
    bool dup_restricted_;
    std::vector<int> ids_;
    std::unordered_map<std::string, Winner> memo_;
};

Winner ef_winner(const LabeledGraph& g, const std::vector<int>& a, const LabeledGraph& h,
                 const std::vector<int>& b, int rounds);
Winner sd_winner(const LabeledGraph& g, const std::vector<int>& a, const std::vector<int>& b,
                 int rounds);
Winner d_winner(const LabeledGraph& g, const std::vector<int>& a, const std::vector<int>& b,
                int rounds);

// l(0) = 0, l(i+1) = 2 l(i) + 1, i.e. l(m) = 2^m - 1.
long long l_of(int m);

struct SpoilerMove {
    int index_i;  // pair index for SD/D, -1 for EF
    int vertex;
    bool a_side;
};

// Ordered per the solver's move ordering: index ascending, a before b,
// vertex ascending (EF: side a/b, vertex ascending).
std::vector<SpoilerMove> legal_spoiler_moves(GameKind kind, const LabeledGraph& g,
                                             const std::vector<int>& a, const std::vector<int>& b);

struct MoveRecord {
    int round;
    std::string player;  // "Spoiler" / "Duplicator"
    std::string side;    // "a" / "b"
    int index_i;         // -1 for EF moves
    int vertex;
    bool legal;
};

struct Transcript {
    GameKind kind;
    int rounds;
    std::vector<MoveRecord> moves;
    GamePosition final_position;  // where play stopped
    std::optional<Winner> winner;
    std::optional<std::string> error;

    nlohmann::json to_json() const;
};

struct GameScripts {
    std::optional<std::vector<SpoilerMove>> spoiler;
    std::optional<std::vector<int>> duplicator;
};

// Plays the game out move by move on a single graph. Unscripted players play
// optimally (first winning move in the fixed ordering, else first legal
// move). A scripted illegal move is recorded with legal=false and reported
// via `error`; play stops there.
Transcript game_trace(GameKind kind, const LabeledGraph& g, std::vector<int> a, std::vector<int> b,
                      int rounds, const GameScripts& scripts = {});

}  // namespace diffmc
