#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "misere/Outcome.hpp"
#include "misere/Position.hpp"
#include "misere/Quotient.hpp"

namespace misere {

// Tests * + * = 0 over the option closure of the generators. The closure
// must contain *; throws std::invalid_argument otherwise.
VerifyResult verify_star_square_zero(const std::vector<PositionId>& generators,
                                     int context_bound = 6);

// Tests p + conj(p) = 0 over the option closure of {p, conj(p)}.
VerifyResult verify_conjugate_pair_zero(PositionId p, int context_bound = 6);

// A single move: one component replaced by one of its options (a target of
// 0 removes the component from the board).
struct StrategyMove {
    PositionId component;
    PositionId target;
};

// Mirroring bookkeeping for playing first in a sum of conjugate pairs of
// alternating-depth-three components. The strategist dismantles one pair
// while answering every move inside the remaining pairs with the conjugate
// move in the twin component.
struct StrategyState {
    enum class Phase : std::uint8_t {
        // every component paired with its untouched conjugate twin; the
        // strategist opens the designated pair on their turn
        Balanced,
        // the opened component vanished immediately; its twin's only reply
        // collapses to zero
        TwinCollapse,
        // the opened component's option survives one exchange; both it and
        // the twin are live
        DeepOpened,
        // the surviving twin is being walked down; its reply chain has two
        // exchanges left
        DeepTwin,
        // last step of the twin's reply chain; the opponent's only outside
        // move ends it
        DeepTail,
        // the opened component's option dies on the opponent's reply; the
        // twin then gets walked down
        ShallowOpened,
        // the twin's walk-down; the opponent's only outside move ends it
        ShallowTail,
    };

    bool left_strategist = true;
    Phase phase = Phase::Balanced;
    // conjugate twins still mirrored move for move, in input order
    std::vector<std::pair<PositionId, PositionId>> pairs;
    // live components of the pair being dismantled, in dismantling order
    std::vector<PositionId> thread;

    SumPosition board() const;
};

// Validates the components (all-small, binary, alternating depth at most
// three), drops zeros, and pairs each with its conjugate.
StrategyState make_strategy_state(const std::vector<PositionId>& components,
                                  bool left_strategist);

// Advances the state by the opponent's move (omitted on the strategist's
// opening turn) and returns the strategist's reply, applied to the state.
// Returns nullopt when the strategist has no move left, which wins the game
// for the strategist under the misère ending. Throws std::invalid_argument
// for moves that do not match the tracked board.
std::optional<StrategyMove> tweedle_move(StrategyState& state,
                                         const std::optional<StrategyMove>& opponent_move);

struct PlayoutResult {
    bool win = false;
    // one full line of play, move by move, in expression syntax
    std::vector<std::string> trace;
};

// Plays the mirroring strategy for the given mover in the sum of p + conj(p)
// over the components, against an adversary that tries every reply. win means
// every adversary line empties the board on the strategist's turn, which wins
// for the strategist since whoever cannot move wins.
PlayoutResult tweedle_playout(const std::vector<PositionId>& components, bool left_first);

}  // namespace misere
