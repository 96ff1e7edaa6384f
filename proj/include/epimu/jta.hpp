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

#ifndef EPIMU_JTA_HPP
#define EPIMU_JTA_HPP

#include "epimu/common.hpp"
#include "epimu/games.hpp"
#include "epimu/worlds.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace epimu {

/// Directions of transition atoms: children (<>, []) or agent jumps.
enum class Dir
{
    Dia,
    Box,
    JumpDia,
    JumpBox,
};

enum class BoolKind
{
    True,
    False,
    Atom,
    Or,
    And,
};

struct BoolNode;
using BoolPos = std::shared_ptr<const BoolNode>;

/// Positive boolean formula over atoms (direction, state).
struct BoolNode
{
    BoolKind kind;
    Dir dir = Dir::Dia;
    std::string agent; // jump atoms
    std::size_t state = 0;
    BoolPos left;
    BoolPos right;
};

namespace bp {
BoolPos top();
BoolPos bottom();
BoolPos atom(Dir dir, std::size_t state, std::string agent = {});
/// Constructors below fold true/false operands.
BoolPos disj(BoolPos a, BoolPos b);
BoolPos conj(BoolPos a, BoolPos b);
} // namespace bp

std::size_t bool_size(const BoolPos& b);
bool structurally_equal(const BoolPos& a, const BoolPos& b);

/**
 * Symmetric jumping tree automaton. Letters are label masks over `props`;
 * `delta[q]` has one entry per letter.
 */
struct Jta
{
    std::vector<std::string> props;
    std::vector<std::string> state_names;
    std::vector<unsigned> colors;
    std::size_t initial = 0;
    std::vector<std::vector<BoolPos>> delta;

    std::size_t num_states() const { return state_names.size(); }
    std::size_t num_letters() const { return std::size_t(1) << props.size(); }
    std::size_t letter(const Label& l) const;
    const BoolPos& transition(std::size_t q, const Label& l) const { return delta[q][letter(l)]; }

    std::set<std::string> agents() const;

    /// Sum of BoolPos sizes over the distinct transition entries of each state.
    std::size_t size() const;

    std::size_t find_state(const std::string& name) const;

    /// Throws ValidationError when delta is not total or atoms reference bad states.
    void check() const;
};

std::string to_string(const BoolPos& b, const Jta& a);

/// Text form of an automaton, readable by parse_jta.
std::string to_string(const Jta& a);

/**
 * Acceptance game of an automaton on a quotient. Positions are (quotient
 * state, automaton state, boolean formula), deduplicated structurally.
 */
struct AcceptanceGame
{
    struct Position
    {
        std::size_t x;
        std::size_t q;
        BoolPos alpha;
    };

    ParityGame game;
    std::vector<Position> positions;
    const Jta* automaton = nullptr;
    const QuotientSystem* quotient = nullptr;

    /// Index of (x, q, alpha) or npos.
    std::size_t find(std::size_t x, std::size_t q, const BoolPos& alpha) const;
    std::string describe(std::size_t v) const;

    /// Interning key of a formula; equal for structurally equal formulas.
    std::size_t formula_id(const BoolPos& b) const;

    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> index;
    mutable std::map<std::tuple<int, int, std::string, std::size_t, std::size_t, std::size_t>, std::size_t> pool;
    mutable std::unordered_map<const BoolNode*, std::size_t> pointer_ids;
};

/**
 * Builds the positions reachable from the initial position (root, q0,
 * delta(q0, lab(root))) and, additionally, from every seed (x, q) given as
 * (x, q, delta(q, lab(x))).
 */
AcceptanceGame build_acceptance_game(const Jta& a, const QuotientSystem& q,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& seeds = {});

bool accepts(const Jta& a, const LeveledStructure& s, const RelationProfile& r);

/// Automaton states q such that some (node, q, beta) is reachable from the
/// initial position when Eve follows `s`.
std::set<std::size_t> visit_set(const AcceptanceGame& g, const PositionalStrategy& s, std::size_t node);

} // namespace epimu

#endif
