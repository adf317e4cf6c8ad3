#include "misere/Identities.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "misere/Expression.hpp"

namespace misere {

namespace {

// The unique option of a nonzero all-small binary component on one side.
PositionId only_option(PositionId p, bool left) {
    const Position& pos = fetch(p);
    const std::vector<PositionId>& opts = left ? pos.left : pos.right;
    if (opts.size() != 1) {
        throw std::logic_error("component lost its single-option shape");
    }
    return opts.front();
}

void require_strategy_component(PositionId p) {
    const StructuralProfile& prof = profile(p);
    if (!prof.all_small || !prof.binary || !prof.ab_rank || *prof.ab_rank > 3) {
        throw std::invalid_argument(
            "mirroring strategy needs all-small binary components with alternating "
            "depth at most three");
    }
}

std::string side_name(bool left) { return left ? "Left" : "Right"; }

std::string move_text(bool left, const StrategyMove& m) {
    return side_name(left) + ": " + format_position(m.component) + " -> " +
           format_position(m.target);
}

std::string stuck_text(bool left) {
    return side_name(left) + ": no move available and wins";
}

// Opens the best pair on the strategist's turn. Every component in a
// balanced state has exactly one option per side, so each pair half falls
// into exactly one bucket: its own-side option is 0, or that option's reply
// survives, or the reply dies at once. The scan prefers the quickest
// dismantling and takes the lowest pair index, designated half first.
std::optional<StrategyMove> opening(StrategyState& s) {
    const bool home = s.left_strategist;
    if (!s.thread.empty()) {
        throw std::logic_error("opening on an unbalanced state");
    }
    if (s.pairs.empty()) {
        return std::nullopt;
    }

    auto half = [&](std::size_t i, int j) {
        return j == 0 ? s.pairs[i].first : s.pairs[i].second;
    };
    auto twin_of = [&](std::size_t i, int j) {
        return j == 0 ? s.pairs[i].second : s.pairs[i].first;
    };

    // A half that vanishes outright leaves its twin one forced reply to 0.
    for (std::size_t i = 0; i < s.pairs.size(); ++i) {
        for (int j = 0; j < 2; ++j) {
            PositionId h = half(i, j);
            if (only_option(h, home) != zero()) continue;
            PositionId twin = twin_of(i, j);
            s.pairs.erase(s.pairs.begin() + static_cast<std::ptrdiff_t>(i));
            s.thread = {twin};
            s.phase = StrategyState::Phase::TwinCollapse;
            return StrategyMove{h, zero()};
        }
    }

    // A half whose opening move survives the opponent's reply gets walked
    // down across two exchanges.
    for (std::size_t i = 0; i < s.pairs.size(); ++i) {
        for (int j = 0; j < 2; ++j) {
            PositionId h = half(i, j);
            PositionId opened = only_option(h, home);
            if (only_option(opened, !home) == zero()) continue;
            PositionId twin = twin_of(i, j);
            s.pairs.erase(s.pairs.begin() + static_cast<std::ptrdiff_t>(i));
            s.thread = {opened, twin};
            s.phase = StrategyState::Phase::DeepOpened;
            return StrategyMove{h, opened};
        }
    }

    // Otherwise every opening move dies on the opponent's reply, in both
    // components of every pair; open the first one.
    PositionId h = s.pairs.front().first;
    PositionId twin = s.pairs.front().second;
    PositionId opened = only_option(h, home);
    s.pairs.erase(s.pairs.begin());
    s.thread = {opened, twin};
    s.phase = StrategyState::Phase::ShallowOpened;
    return StrategyMove{h, opened};
}

// Answers a move inside a still-mirrored pair with the conjugate move in the
// twin, which restores the pair or removes it entirely.
StrategyMove mirror_reply(StrategyState& s, std::size_t i, PositionId moved, PositionId target) {
    auto& pr = s.pairs[i];
    PositionId twin = pr.first == moved ? pr.second : pr.first;
    PositionId mirrored = conjugate(target);
    if (target == zero()) {
        s.pairs.erase(s.pairs.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
        pr.first = target;
        pr.second = mirrored;
    }
    return StrategyMove{twin, mirrored};
}

}  // namespace

SumPosition StrategyState::board() const {
    std::vector<PositionId> parts;
    parts.reserve(2 * pairs.size() + thread.size());
    for (const auto& pr : pairs) {
        parts.push_back(pr.first);
        parts.push_back(pr.second);
    }
    for (PositionId t : thread) parts.push_back(t);
    return make_sum(parts);
}

StrategyState make_strategy_state(const std::vector<PositionId>& components,
                                  bool left_strategist) {
    StrategyState s;
    s.left_strategist = left_strategist;
    for (PositionId p : components) {
        require_strategy_component(p);
        if (p == zero()) continue;
        s.pairs.emplace_back(p, conjugate(p));
    }
    return s;
}

std::optional<StrategyMove> tweedle_move(StrategyState& state,
                                         const std::optional<StrategyMove>& opponent_move) {
    using Phase = StrategyState::Phase;
    const bool home = state.left_strategist;

    if (!opponent_move) {
        if (state.phase != Phase::Balanced) {
            throw std::invalid_argument("an opening move needs a balanced state");
        }
        return opening(state);
    }
    if (state.phase == Phase::Balanced) {
        throw std::invalid_argument("a balanced state is the strategist's turn");
    }

    const PositionId moved = opponent_move->component;
    const PositionId target = opponent_move->target;

    // Components of the pair being dismantled come first; when a pair half
    // carries the same value, either reading leaves the board identical, so
    // the bookkeeping keeps its own designation.
    for (std::size_t k = 0; k < state.thread.size(); ++k) {
        if (state.thread[k] != moved) continue;
        if (target != only_option(moved, !home)) {
            throw std::invalid_argument("opponent move does not match the component's option");
        }
        switch (state.phase) {
            case Phase::TwinCollapse: {
                // the lone twin's only move is to 0; back to a balanced board
                state.thread.clear();
                state.phase = Phase::Balanced;
                return opening(state);
            }
            case Phase::DeepOpened: {
                if (k == 0) {
                    // the opened component took the reply; finish it off
                    if (only_option(target, home) != zero()) {
                        throw std::logic_error("walk-down expected to reach 0");
                    }
                    state.thread = {state.thread[1]};
                    state.phase = Phase::DeepTwin;
                    return StrategyMove{target, zero()};
                }
                // the twin stepped onto the opened component's conjugate;
                // the two live components pair up again
                PositionId opened = state.thread[0];
                state.thread.clear();
                state.pairs.emplace_back(opened, target);
                state.phase = Phase::Balanced;
                return opening(state);
            }
            case Phase::DeepTwin: {
                // walk the twin down one more exchange
                PositionId down = only_option(target, home);
                state.thread = {down};
                state.phase = Phase::DeepTail;
                return StrategyMove{target, down};
            }
            case Phase::DeepTail: {
                if (target != zero()) {
                    throw std::logic_error("tail move expected to reach 0");
                }
                state.thread.clear();
                state.phase = Phase::Balanced;
                return opening(state);
            }
            case Phase::ShallowOpened: {
                if (k == 0) {
                    // the opened component died on the reply; walk the twin
                    if (target != zero()) {
                        throw std::logic_error("opened component expected to die");
                    }
                    PositionId twin = state.thread[1];
                    PositionId down = only_option(twin, home);
                    state.thread = {down};
                    state.phase = Phase::ShallowTail;
                    return StrategyMove{twin, down};
                }
                PositionId opened = state.thread[0];
                state.thread.clear();
                state.pairs.emplace_back(opened, target);
                state.phase = Phase::Balanced;
                return opening(state);
            }
            case Phase::ShallowTail: {
                if (target != zero()) {
                    throw std::logic_error("tail move expected to reach 0");
                }
                state.thread.clear();
                state.phase = Phase::Balanced;
                return opening(state);
            }
            case Phase::Balanced:
                break;
        }
    }

    for (std::size_t i = 0; i < state.pairs.size(); ++i) {
        if (state.pairs[i].first != moved && state.pairs[i].second != moved) continue;
        if (target != only_option(moved, !home)) {
            throw std::invalid_argument("opponent move does not match the component's option");
        }
        return mirror_reply(state, i, moved, target);
    }

    throw std::invalid_argument("opponent move does not match the tracked board");
}

namespace {

std::vector<std::uint64_t> encode_state(const StrategyState& s) {
    std::vector<std::uint64_t> key;
    key.reserve(2 + s.thread.size() + 2 * s.pairs.size());
    key.push_back(static_cast<std::uint64_t>(s.phase));
    key.push_back(s.thread.size());
    for (PositionId t : s.thread) key.push_back(t);
    for (const auto& pr : s.pairs) {
        key.push_back(pr.first);
        key.push_back(pr.second);
    }
    return key;
}

// One move per distinct component value; a component's reply is unique, and
// equal values lead to identical boards either way.
std::vector<StrategyMove> adversary_moves(const StrategyState& s) {
    const bool adv_left = !s.left_strategist;
    std::vector<StrategyMove> moves;
    auto add = [&](PositionId c) {
        for (const StrategyMove& m : moves) {
            if (m.component == c) return;
        }
        moves.push_back(StrategyMove{c, only_option(c, adv_left)});
    };
    for (PositionId t : s.thread) add(t);
    for (const auto& pr : s.pairs) {
        add(pr.first);
        add(pr.second);
    }
    return moves;
}

// Whether the strategy survives every adversary continuation from a state
// where the adversary is to move. Total birthday falls with every ply, so
// the recursion terminates without cycle handling.
bool strategist_holds(const StrategyState& s, std::map<std::vector<std::uint64_t>, bool>& memo) {
    if (s.pairs.empty() && s.thread.empty()) {
        // the strategist emptied the board; the adversary cannot move and wins
        return false;
    }
    auto key = encode_state(s);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool holds = true;
    for (const StrategyMove& m : adversary_moves(s)) {
        StrategyState next = s;
        std::optional<StrategyMove> reply = tweedle_move(next, m);
        if (!reply) continue;  // board emptied on the strategist's turn: a won line
        if (!strategist_holds(next, memo)) {
            holds = false;
            break;
        }
    }
    memo[key] = holds;
    return holds;
}

}  // namespace

PlayoutResult tweedle_playout(const std::vector<PositionId>& components, bool left_first) {
    StrategyState cur = make_strategy_state(components, left_first);
    std::map<std::vector<std::uint64_t>, bool> memo;
    PlayoutResult out;

    std::optional<StrategyMove> first = tweedle_move(cur, std::nullopt);
    if (!first) {
        out.win = true;
        out.trace.push_back(stuck_text(left_first));
        return out;
    }
    out.win = strategist_holds(cur, memo);

    // Replay one line: any adversary continuation sustains a win, and a
    // refuting continuation exists on a loss.
    out.trace.push_back(move_text(left_first, *first));
    const bool adv_left = !left_first;
    while (true) {
        if (cur.pairs.empty() && cur.thread.empty()) {
            out.trace.push_back(stuck_text(adv_left));
            break;
        }
        bool advanced = false;
        for (const StrategyMove& m : adversary_moves(cur)) {
            StrategyState next = cur;
            std::optional<StrategyMove> reply = tweedle_move(next, m);
            bool line_holds = reply ? strategist_holds(next, memo) : true;
            if (line_holds != out.win) continue;
            out.trace.push_back(move_text(adv_left, m));
            cur = next;
            if (reply) {
                out.trace.push_back(move_text(left_first, *reply));
                advanced = true;
            } else {
                out.trace.push_back(stuck_text(left_first));
            }
            break;
        }
        if (!advanced) break;
    }
    return out;
}

VerifyResult verify_star_square_zero(const std::vector<PositionId>& generators,
                                     int context_bound) {
    ClosureBase cb = option_closure(generators);
    if (std::find(cb.base.begin(), cb.base.end(), star()) == cb.base.end()) {
        throw std::invalid_argument("the generators' option closure must contain star");
    }
    return verify_relation(make_sum({star(), star()}), SumPosition{}, cb, context_bound);
}

VerifyResult verify_conjugate_pair_zero(PositionId p, int context_bound) {
    ClosureBase cb = option_closure({p, conjugate(p)});
    return verify_relation(make_sum({p, conjugate(p)}), SumPosition{}, cb, context_bound);
}

}  // namespace misere
