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

#ifndef EPIMU_ATLI_HPP
#define EPIMU_ATLI_HPP

#include "epimu/common.hpp"
#include "epimu/logic.hpp"
#include "epimu/worlds.hpp"

#include <optional>
#include <string>
#include <vector>

namespace epimu {

enum class SemanticsMode
{
    DeRe,
    DeDicto,
    UniformOnly,
};

const char* to_string(SemanticsMode m);
SemanticsMode parse_semantics_mode(const std::string& s); // de-re | de-dicto | uniform-only

/// How outcome nodes without any child compatible with the profile are read.
enum class Blocking
{
    Strict,  // such profiles are rejected when a blocked node matters
    Vacuous, // no outcome passes through a blocked node
};

struct AtliOptions
{
    SemanticsMode mode = SemanticsMode::DeRe;
    bool include_self = false;
    Blocking blocking = Blocking::Strict;
    bool parallel = true;
};

/// Per quotient state action index into the agent's declared actions.
struct AgentStrategy
{
    std::string agent;
    std::vector<std::size_t> action;
};

struct Profile
{
    std::vector<AgentStrategy> strategies; // one per coalition agent, sorted by agent
};

struct Objective
{
    enum class Kind
    {
        Next,
        Until,
    };
    Kind kind = Kind::Until;
    StateSet hold;   // Until only
    StateSet target;

    static Objective next(StateSet target);
    static Objective until(StateSet hold, StateSet target);
};

struct OutcomeGraph
{
    std::vector<std::size_t> starts;
    StateSet nodes;   // reachable through profile-compatible child edges
    StateSet blocked; // reached nodes with no compatible child
    std::vector<std::vector<std::size_t>> succ;
};

/// Compound action stamped on each quotient state (npos at the root).
struct ArenaActions
{
    std::vector<std::string> agents;
    std::vector<std::vector<std::string>> actions; // per agent
    std::vector<std::vector<std::size_t>> stamp;   // [state][agent], empty for the root

    explicit ArenaActions(const QuotientSystem& q);
    std::size_t agent_index(const std::string& a) const;
};

OutcomeGraph outcomes_from(const QuotientSystem& q, const ArenaActions& arena, const Profile& p,
                           const std::vector<std::size_t>& starts);

bool check_objective(const OutcomeGraph& g, const Objective& o, Blocking blocking = Blocking::Strict);

/// Start states required by the mode for a coalition at x ({x} for the empty coalition).
std::vector<std::size_t> epistemic_starts(const QuotientSystem& q, const std::vector<std::string>& coalition,
                                          std::size_t x, bool include_self);

/**
 * Smallest profile in enumeration order (uniformity classes by minimal member,
 * first class most significant, actions in declaration order) achieving the
 * objective from every start, or nothing.
 */
std::optional<Profile> synthesize_profile(const QuotientSystem& q, const std::vector<std::string>& coalition,
                                          const Objective& o, const std::vector<std::size_t>& starts,
                                          const AtliOptions& opts = {});

/// Mode-aware decision for one state.
std::optional<Profile> synthesize_profile_at(const QuotientSystem& q, const std::vector<std::string>& coalition,
                                             const Objective& o, std::size_t x, const AtliOptions& opts = {});

StateSet eval_atl(const QuotientSystem& q, const AtlFormula& f, const AtliOptions& opts = {});

/// Uniformity classes of an agent: components of the symmetric closure of its
/// jump relation, each sorted, ordered by minimal member.
std::vector<std::vector<std::size_t>> uniformity_classes(const QuotientSystem& q, const std::string& agent);

bool is_uniform(const QuotientSystem& q, const AgentStrategy& s);

/// `agent a: class {n1, n2} -> a0` lines.
std::string to_string(const Profile& p, const QuotientSystem& q);

} // namespace epimu

#endif
