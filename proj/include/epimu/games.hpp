/*
 * Copyright 2026 The epimu Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef EPIMU_GAMES_HPP
#define EPIMU_GAMES_HPP

#include "epimu/common.hpp"
#include "epimu/worlds.hpp"

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace epimu {

enum class Player
{
    Eve = 0,
    Adam = 1,
};

inline Player opponent(Player p) { return p == Player::Eve ? Player::Adam : Player::Eve; }

/// The player who likes colour c under the min-parity condition.
inline Player parity_owner(unsigned c) { return c % 2 == 0 ? Player::Eve : Player::Adam; }

const char* to_string(Player p);

/**
 * Min-parity game. A position without moves is a terminal: it is won by its
 * declared winner if one is set, and lost by its owner otherwise.
 */
struct ParityGame
{
    std::vector<Player> owner;
    std::vector<unsigned> color;
    std::vector<std::vector<std::size_t>> moves;
    std::vector<std::optional<Player>> declared_winner;
    std::vector<std::string> names;
    std::size_t initial = 0;

    std::size_t size() const { return owner.size(); }
    std::size_t add_position(Player owner, unsigned color, std::string name = {});
    void add_move(std::size_t from, std::size_t to);
    void set_terminal(std::size_t pos, Player winner);

    bool is_terminal(std::size_t v) const { return moves[v].empty(); }
    /// Winner of a terminal position.
    Player terminal_winner(std::size_t v) const;

    /// Index of the position with the given name, or npos.
    std::size_t find(const std::string& name) const;

    /// Throws ValidationError on dangling moves or a bad initial position.
    void check() const;
};

/// Choice per position; npos where undefined.
struct PositionalStrategy
{
    std::vector<std::size_t> choice;

    std::size_t operator()(std::size_t v) const { return v < choice.size() ? choice[v] : npos; }
};

/**
 * Strategy with finite memory. Memory is updated on every move taken, with
 * the position the play moves to; `choose` returns npos where undefined.
 */
struct FiniteMemoryStrategy
{
    std::size_t memory_size = 1;
    std::size_t initial_memory = 0;
    std::function<std::size_t(std::size_t memory, std::size_t to)> update;
    std::function<std::size_t(std::size_t memory, std::size_t position)> choose;
};

struct Solution
{
    StateSet eve;
    StateSet adam;
    PositionalStrategy eve_strategy;  // defined on Eve's positions of `eve`
    PositionalStrategy adam_strategy; // defined on Adam's positions of `adam`

    Player winner(std::size_t v) const { return eve.test(v) ? Player::Eve : Player::Adam; }
};

/// Zielonka's recursive algorithm. Ties between moves go to the smallest index.
Solution solve(const ParityGame& g);

struct StrategyCheck
{
    bool winning = false;
    std::string diagnostic;

    explicit operator bool() const { return winning; }
};

/// Whether every play from `from` consistent with the strategy is won by `player`.
StrategyCheck verify_strategy(const ParityGame& g, const PositionalStrategy& s, std::size_t from,
                              Player player = Player::Eve);
StrategyCheck verify_strategy(const ParityGame& g, const FiniteMemoryStrategy& s, std::size_t from,
                              Player player = Player::Eve);

using PairSet = std::set<std::pair<std::size_t, std::size_t>>;

struct BisimulationCheck
{
    bool ok = true;
    std::string clause; // empty when ok
    std::size_t left = npos;
    std::size_t right = npos;
    std::string detail;

    explicit operator bool() const { return ok; }
};

/**
 * Checks the game-bisimulation clauses for every pair of `z`: equal colour,
 * equal owner, equal terminal winner, zig and zag.
 */
BisimulationCheck check_bisimulation(const ParityGame& g, const ParityGame& g2, const PairSet& z);

/// Largest game bisimulation between g and g2.
PairSet max_bisimulation(const ParityGame& g, const ParityGame& g2);

/// Largest bisimulation between two transition systems with equal label
/// harmony and zig/zag on every relation.
PairSet max_bisimulation(const TransitionSystem& a, const TransitionSystem& b);

/// Exhaustive enumeration of positional strategies of both players.
Player brute_force_winner(const ParityGame& g, std::size_t from, std::size_t cap = 10);

} // namespace epimu

#endif
