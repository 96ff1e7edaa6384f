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

#ifndef EPIMU_WORLDS_HPP
#define EPIMU_WORLDS_HPP

#include "epimu/common.hpp"
#include "epimu/dfa.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace epimu {

/// Set of atomic propositions holding at a node.
using Label = std::set<std::string>;

/// Sequence of labels from the root down to a node.
using LabelWord = std::vector<Label>;

struct StructureNode
{
    std::string id;
    std::size_t depth = 0;
    Label label;
    /// Ordered children. Empty for loop-leaves, whose only successor is themselves.
    std::vector<std::size_t> children;
    bool loop = false;
};

/**
 * Finite, depth-stratified graph whose unfolding is an infinite labelled tree.
 * Leaves carry a self-loop. When `actions` is non-empty the structure is read
 * as a tree-arena: every non-root node is stamped with one compound action.
 */
struct LeveledStructure
{
    std::vector<std::string> agents;
    /// Declared actions per agent (tree-arenas only).
    std::map<std::string, std::vector<std::string>> actions;
    std::vector<StructureNode> nodes;
    std::size_t root = 0;

    std::size_t add_node(std::string id, std::size_t depth, Label label, bool loop = false);
    void add_child(std::size_t parent, std::size_t child) { nodes[parent].children.push_back(child); }

    /// Index of the node with the given id, or npos.
    std::size_t find(const std::string& id) const;
    std::size_t at(const std::string& id) const;

    /// Successors in the unfolding: the ordered children, or the node itself.
    std::vector<std::size_t> successors(std::size_t n) const;

    std::size_t max_depth() const;
    std::set<std::string> alphabet() const;
    bool is_arena() const { return !actions.empty(); }

private:
    std::map<std::string, std::size_t> index_;
};

using TreeArena = LeveledStructure;

/// Action proposition for a compound action, one component per agent in
/// declaration order: p_<a^1>_<a^2>...
std::string action_proposition(const std::vector<std::string>& compound);

/// All action propositions of an arena, in lexicographic order of compounds.
std::vector<std::string> action_propositions(const LeveledStructure& arena);

struct Diagnostic
{
    std::string clause;
    std::string node;
    std::string message;
};

/// Structural invariants of a leveled structure.
std::vector<Diagnostic> validate(const LeveledStructure& s);

/// Structural invariants plus the tree-arena clauses on action propositions.
std::vector<Diagnostic> validate_arena(const TreeArena& s);

/// Explicit finite tree obtained by unfolding down to a given depth.
struct FiniteTree
{
    struct Node
    {
        std::size_t origin = 0; // structure node
        std::size_t depth = 0;
        std::size_t parent = npos;
        Label label;
        std::vector<std::size_t> children;
    };
    std::vector<Node> nodes; // nodes[0] is the root

    LabelWord word(std::size_t n) const;
};

FiniteTree unfold_prefix(const LeveledStructure& s, std::size_t depth);

// ---------------------------------------------------------------------------
// Relations
// ---------------------------------------------------------------------------

/**
 * R = union over k of L_k x L'_k. Every automaton reads letters that are label
 * masks over `props` (bit b set iff props[b] is in the label).
 */
struct RecognizableRelation
{
    std::vector<std::string> props;
    std::vector<std::pair<Dfa, Dfa>> pairs;

    std::size_t num_letters() const { return std::size_t(1) << props.size(); }
    std::size_t letter(const Label& l) const;
    std::vector<std::size_t> letters(const LabelWord& w) const;
};

bool relate(const RecognizableRelation& r, const LabelWord& w, const LabelWord& w2);

/// Number of states of the minimal complete automaton for {w # w' | w R w'}.
std::size_t rel_size(const RecognizableRelation& r);

/// Reference to quotient states: a node at one level, or at every level.
/// `infinite` selects the saturation level.
struct StateRef
{
    std::string node;
    std::optional<std::size_t> level;
    bool infinite = false;
};

struct AgentRelation
{
    enum class Kind
    {
        EqualLevel,
        Explicit,
        Recognizable,
    };
    Kind kind = Kind::EqualLevel;
    std::vector<std::pair<StateRef, StateRef>> pairs; // Explicit
    RecognizableRelation recognizable;                // Recognizable

    static AgentRelation equal_level() { return {}; }
    static AgentRelation explicit_pairs(std::vector<std::pair<StateRef, StateRef>> p);
    static AgentRelation recognizable_relation(RecognizableRelation r);
};

struct RelationProfile
{
    std::map<std::string, AgentRelation> agents;

    static RelationProfile equal_level(const std::set<std::string>& agents);
};

// ---------------------------------------------------------------------------
// Quotient
// ---------------------------------------------------------------------------

/// Level value used for the saturation class.
constexpr std::size_t kInfiniteLevel = npos;

struct QuotientState
{
    std::size_t node = 0;
    std::size_t level = 0; // clamped; kInfiniteLevel beyond the last tree level
    std::vector<std::size_t> dfa; // run states of every recognizable automaton

    auto key() const { return std::tie(node, level, dfa); }
};

/// Multi-modal transition system with one child relation and one relation per agent.
struct TransitionSystem
{
    std::vector<Label> labels;
    std::vector<std::vector<std::vector<std::size_t>>> relations; // [relation][state]
    std::size_t initial = 0;

    std::size_t size() const { return labels.size(); }
};

/**
 * Finite quotient of the unfolding of a leveled structure under a relation
 * profile. States are (node, clamped level, automaton-state vector) triples.
 */
struct QuotientSystem
{
    std::vector<QuotientState> states;
    std::vector<Label> labels;
    std::vector<std::vector<std::size_t>> children; // deduplicated, first-occurrence order
    std::vector<std::string> agents;                // sorted
    std::vector<std::vector<std::vector<std::size_t>>> jumps; // [agent][state]
    std::size_t root = 0;
    std::size_t max_depth = 0;
    const LeveledStructure* source = nullptr;

    // Copied from the structure so that arenas survive without it.
    std::vector<std::string> arena_agents;
    std::map<std::string, std::vector<std::string>> arena_actions;
    std::vector<std::string> node_ids;

    std::size_t size() const { return states.size(); }
    std::size_t agent_index(const std::string& agent) const; // npos if absent
    bool related(std::size_t agent, std::size_t x, std::size_t y) const;

    /// "node@level" or "node@inf", with "#k" appended when automaton runs
    /// split a (node, level) pair into several states.
    std::string name(std::size_t s) const;

    /// States carrying the given structure node.
    std::vector<std::size_t> states_of(const std::string& node_id) const;
    std::vector<std::size_t> resolve(const StateRef& ref) const;

    /// Child relation first, then one relation per agent in `agents` order.
    TransitionSystem as_transition_system() const;
};

QuotientSystem build_quotient(const LeveledStructure& s, const RelationProfile& r);

/// The unfolding prefix as a transition system: the deepest nodes loop on
/// themselves and the jump relations are computed on explicit words
/// (equal depth, DFA runs, or explicit pairs mapped through the quotient).
TransitionSystem annotate_prefix(const FiniteTree& t, const LeveledStructure& s, const RelationProfile& r,
                                 const QuotientSystem& q);

} // namespace epimu

#endif
