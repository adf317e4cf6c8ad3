#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "misere/Position.hpp"

namespace misere::testsupport {

// Grows a pool of interned positions by combining earlier entries, so later
// entries tend to be deeper. Deterministic for a fixed seed. Candidates whose
// birthday would exceed max_birthday are skipped (0 means no cap).
inline std::vector<PositionId> random_pool(unsigned seed, std::size_t count, int max_options = 3,
                                           int max_birthday = 0) {
    std::mt19937 rng(seed);
    std::vector<PositionId> pool{zero()};
    std::uniform_int_distribution<int> option_count(0, max_options);
    while (pool.size() < count) {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        std::vector<PositionId> left, right;
        for (int i = option_count(rng); i > 0; --i) left.push_back(pool[pick(rng)]);
        for (int i = option_count(rng); i > 0; --i) right.push_back(pool[pick(rng)]);
        const PositionId p = build(std::move(left), std::move(right));
        if (max_birthday > 0 && profile(p).birthday > max_birthday) continue;
        pool.push_back(p);
    }
    return pool;
}

// Pool of all-small positions: both option sets drawn nonempty, seeded with 0.
inline std::vector<PositionId> random_all_small_pool(unsigned seed, std::size_t count,
                                                     int max_options = 2, int max_birthday = 0) {
    std::mt19937 rng(seed);
    std::vector<PositionId> pool{zero(), star()};
    std::uniform_int_distribution<int> option_count(1, max_options);
    while (pool.size() < count) {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        std::vector<PositionId> left, right;
        for (int i = option_count(rng); i > 0; --i) left.push_back(pool[pick(rng)]);
        for (int i = option_count(rng); i > 0; --i) right.push_back(pool[pick(rng)]);
        const PositionId p = build(std::move(left), std::move(right));
        if (max_birthday > 0 && profile(p).birthday > max_birthday) continue;
        pool.push_back(p);
    }
    return pool;
}

// Pool of all-small binary positions whose alternating paths stay within
// max_rank. Built from one option per side, rejecting overranked candidates.
inline std::vector<PositionId> random_ab_pool(unsigned seed, std::size_t count, int max_rank) {
    std::mt19937 rng(seed);
    std::vector<PositionId> pool{zero(), star()};
    while (pool.size() < count) {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        const PositionId p = build({pool[pick(rng)]}, {pool[pick(rng)]});
        const StructuralProfile& pr = profile(p);
        if (!pr.ab_rank || *pr.ab_rank > max_rank) continue;
        pool.push_back(p);
    }
    return pool;
}

// Pool of impartial positions grown with identical option sets per side.
inline std::vector<PositionId> random_impartial_pool(unsigned seed, std::size_t count,
                                                     int max_options = 3, int max_birthday = 0) {
    std::mt19937 rng(seed);
    std::vector<PositionId> pool{zero()};
    std::uniform_int_distribution<int> option_count(1, max_options);
    while (pool.size() < count) {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        std::vector<PositionId> options;
        for (int i = option_count(rng); i > 0; --i) options.push_back(pool[pick(rng)]);
        const PositionId p = build(options, options);
        if (max_birthday > 0 && profile(p).birthday > max_birthday) continue;
        pool.push_back(p);
    }
    return pool;
}

inline std::size_t count_substr(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t at = text.find(needle); at != std::string::npos;
         at = text.find(needle, at + needle.size())) {
        ++count;
    }
    return count;
}

}  // namespace misere::testsupport
