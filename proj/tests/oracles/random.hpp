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

#ifndef EPIMU_TESTS_RANDOM_HPP
#define EPIMU_TESTS_RANDOM_HPP

// Seeded generators of small random inputs for property tests.

#include "epimu/games.hpp"
#include "epimu/jta.hpp"
#include "epimu/logic.hpp"
#include "epimu/worlds.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace epimu::testing {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Random NNF formula of roughly the given size over props and agents; bound
/// variables come from `scope`.
inline MuFormula random_nnf(Rng& rng, int size, const std::vector<std::string>& props,
                            const std::vector<std::string>& agents, std::vector<std::string>& scope, int& fresh)
{
    if (size <= 1) {
        std::size_t choice = pick(rng, 4 + (scope.empty() ? 0 : 2));
        if (choice == 0)
            return coin(rng) ? mu::top() : mu::bottom();
        if (choice <= 3) {
            auto p = mu::prop(props[pick(rng, props.size())]);
            return coin(rng, 0.3) ? mu::neg(p) : p;
        }
        return mu::var(scope[pick(rng, scope.size())]);
    }
    switch (pick(rng, 6)) {
    case 0:
    case 1: {
        int l = 1 + static_cast<int>(pick(rng, static_cast<std::size_t>(std::max(1, size - 2))));
        auto a = random_nnf(rng, l, props, agents, scope, fresh);
        auto b = random_nnf(rng, std::max(1, size - 1 - l), props, agents, scope, fresh);
        return pick(rng, 2) == 0 ? mu::disj(a, b) : mu::conj(a, b);
    }
    case 2: return coin(rng) ? mu::diamond(random_nnf(rng, size - 1, props, agents, scope, fresh))
                             : mu::box(random_nnf(rng, size - 1, props, agents, scope, fresh));
    case 3: {
        if (agents.empty())
            return mu::diamond(random_nnf(rng, size - 1, props, agents, scope, fresh));
        auto a = agents[pick(rng, agents.size())];
        auto body = random_nnf(rng, size - 1, props, agents, scope, fresh);
        return coin(rng) ? mu::know(a, body) : mu::possible(a, body);
    }
    default: {
        std::string x = "Y" + std::to_string(fresh++);
        scope.push_back(x);
        auto body = random_nnf(rng, size - 1, props, agents, scope, fresh);
        scope.pop_back();
        return coin(rng) ? mu::lfp(x, body) : mu::gfp(x, body);
    }
    }
}

/// Guarded NNF sentence of size at most `max_size`.
inline MuFormula random_guarded_sentence(Rng& rng, int max_size, const std::vector<std::string>& props,
                                         const std::vector<std::string>& agents)
{
    for (;;) {
        std::vector<std::string> scope;
        int fresh = 0;
        auto f = random_nnf(rng, 1 + static_cast<int>(pick(rng, static_cast<std::size_t>(max_size))), props, agents,
                            scope, fresh);
        if (formula_size(f) <= static_cast<std::size_t>(max_size) && free_variables(f).empty() &&
            check_guarded(f).empty())
            return alpha_rename(f);
    }
}

/// Random leveled structure: levels of one to three nodes, every node below
/// the root has a parent one level up, deepest nodes loop.
inline LeveledStructure random_structure(Rng& rng, std::size_t max_levels, std::size_t max_width,
                                         const std::vector<std::string>& props, const std::vector<std::string>& agents)
{
    LeveledStructure s;
    s.agents = agents;
    std::size_t levels = 1 + pick(rng, max_levels);
    std::vector<std::vector<std::size_t>> by_level;
    auto label = [&] {
        Label l;
        for (const auto& p : props)
            if (coin(rng))
                l.insert(p);
        return l;
    };
    for (std::size_t d = 0; d < levels; ++d) {
        std::size_t width = d == 0 ? 1 : 1 + pick(rng, max_width);
        by_level.emplace_back();
        for (std::size_t k = 0; k < width; ++k)
            by_level[d].push_back(s.add_node("n" + std::to_string(d) + "_" + std::to_string(k), d, label(), d + 1 == levels));
    }
    for (std::size_t d = 0; d + 1 < levels; ++d) {
        const auto& up = by_level[d];
        const auto& down = by_level[d + 1];
        for (std::size_t c : down)
            s.add_child(up[pick(rng, up.size())], c);
        for (std::size_t u : up) {
            if (s.nodes[u].children.empty())
                s.add_child(u, down[pick(rng, down.size())]);
            if (coin(rng, 0.3)) {
                std::size_t extra = down[pick(rng, down.size())];
                auto& ch = s.nodes[u].children;
                if (std::find(ch.begin(), ch.end(), extra) == ch.end())
                    ch.push_back(extra);
            }
        }
    }
    return s;
}

inline Dfa random_dfa(Rng& rng, std::size_t letters, std::size_t max_states)
{
    Dfa d;
    d.num_letters = letters;
    d.num_states = 1 + pick(rng, max_states);
    d.initial = 0;
    d.accepting.resize(d.num_states);
    for (std::size_t s = 0; s < d.num_states; ++s)
        d.accepting[s] = coin(rng);
    for (std::size_t i = 0; i < d.num_states * letters; ++i)
        d.delta.push_back(pick(rng, d.num_states));
    return d;
}

inline RecognizableRelation random_relation(Rng& rng, const std::vector<std::string>& props, std::size_t max_pairs,
                                            std::size_t max_states)
{
    RecognizableRelation r;
    r.props = props;
    std::size_t n = 1 + pick(rng, max_pairs);
    for (std::size_t k = 0; k < n; ++k)
        r.pairs.emplace_back(random_dfa(rng, r.num_letters(), max_states), random_dfa(rng, r.num_letters(), max_states));
    return r;
}

inline AgentRelation random_agent_relation(Rng& rng, const LeveledStructure& s, const std::vector<std::string>& props,
                                           int kind)
{
    if (kind == 0)
        return AgentRelation::equal_level();
    if (kind == 1)
        return AgentRelation::recognizable_relation(random_relation(rng, props, 2, 2));
    std::vector<std::pair<StateRef, StateRef>> pairs;
    std::size_t n = pick(rng, 2 * s.nodes.size() + 1);
    for (std::size_t k = 0; k < n; ++k) {
        StateRef a{s.nodes[pick(rng, s.nodes.size())].id, std::nullopt, false};
        StateRef b{s.nodes[pick(rng, s.nodes.size())].id, std::nullopt, false};
        pairs.emplace_back(a, b);
    }
    return AgentRelation::explicit_pairs(pairs);
}

/// Random parity game; positions without moves are terminals, some of them
/// with a declared winner.
inline ParityGame random_game(Rng& rng, std::size_t max_positions, unsigned max_color, double terminal_rate = 0.1)
{
    ParityGame g;
    std::size_t n = 1 + pick(rng, max_positions);
    for (std::size_t v = 0; v < n; ++v)
        g.add_position(coin(rng) ? Player::Eve : Player::Adam, static_cast<unsigned>(pick(rng, max_color + 1)));
    for (std::size_t v = 0; v < n; ++v) {
        if (coin(rng, terminal_rate)) {
            if (coin(rng))
                g.set_terminal(v, coin(rng) ? Player::Eve : Player::Adam);
            continue;
        }
        std::size_t k = 1 + pick(rng, 3);
        for (std::size_t e = 0; e < k; ++e)
            g.add_move(v, pick(rng, n));
    }
    g.initial = 0;
    return g;
}

/// A game together with a copy where some positions are duplicated, so that
/// the pair has a non-trivial bisimulation.
inline ParityGame inflate_game(Rng& rng, const ParityGame& g)
{
    ParityGame h;
    std::vector<std::vector<std::size_t>> copies(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) {
        std::size_t k = 1 + pick(rng, 2);
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t w = h.add_position(g.owner[v], g.color[v]);
            copies[v].push_back(w);
            if (g.declared_winner[v])
                h.set_terminal(w, *g.declared_winner[v]);
        }
    }
    for (std::size_t v = 0; v < g.size(); ++v)
        for (std::size_t w : copies[v])
            for (std::size_t u : g.moves[v])
                h.add_move(w, copies[u][pick(rng, copies[u].size())]);
    // Occasionally perturb a colour so that some pairs stop being bisimilar.
    if (coin(rng, 0.3) && h.size() > 0)
        h.color[pick(rng, h.size())] ^= 1u;
    h.initial = copies[g.initial].front();
    return h;
}

inline BoolPos random_boolpos(Rng& rng, int size, std::size_t states, const std::vector<std::string>& agents)
{
    if (size <= 1) {
        std::size_t c = pick(rng, 10);
        if (c == 0)
            return bp::top();
        if (c == 1)
            return bp::bottom();
        std::size_t dirs = agents.empty() ? 2 : 4;
        Dir d = static_cast<Dir>(pick(rng, dirs));
        std::string a = (d == Dir::JumpDia || d == Dir::JumpBox) ? agents[pick(rng, agents.size())] : "";
        return bp::atom(d, pick(rng, states), a);
    }
    auto l = random_boolpos(rng, size / 2, states, agents);
    auto r = random_boolpos(rng, size - size / 2, states, agents);
    return coin(rng) ? bp::disj(l, r) : bp::conj(l, r);
}

/// Automaton over props with at most `max_states` states and colours drawn
/// from {c, c+1} for a random c, so at most two distinct colours.
inline Jta random_jta(Rng& rng, const std::vector<std::string>& props, std::size_t max_states,
                      const std::vector<std::string>& agents)
{
    Jta a;
    a.props = props;
    std::size_t n = 1 + pick(rng, max_states);
    unsigned base = static_cast<unsigned>(pick(rng, 2));
    for (std::size_t q = 0; q < n; ++q) {
        a.state_names.push_back("q" + std::to_string(q));
        a.colors.push_back(base + static_cast<unsigned>(pick(rng, 2)));
    }
    a.initial = 0;
    a.delta.assign(n, {});
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t c = 0; c < a.num_letters(); ++c)
            a.delta[q].push_back(random_boolpos(rng, 1 + static_cast<int>(pick(rng, 3)), n, agents));
    return a;
}

/// Random tree-arena for the given agents, two actions each. Each node picks
/// its children's compound actions at random, pairwise different when
/// `distinct` is set; p and q are scattered.
inline TreeArena random_arena(Rng& rng, const std::vector<std::string>& agents, std::size_t max_levels,
                              std::size_t max_children, bool distinct = false)
{
    TreeArena t;
    t.agents = agents;
    std::vector<std::vector<std::string>> compounds{{}};
    for (const auto& a : agents) {
        t.actions[a] = {a + "0", a + "1"};
        std::vector<std::vector<std::string>> next;
        for (const auto& c : compounds)
            for (const auto& act : t.actions[a]) {
                auto d = c;
                d.push_back(act);
                next.push_back(d);
            }
        compounds = next;
    }
    std::size_t levels = 2 + pick(rng, max_levels - 1);
    std::size_t counter = 0;
    auto props = [&] {
        Label l;
        if (coin(rng, 0.3))
            l.insert("p");
        if (coin(rng, 0.3))
            l.insert("q");
        return l;
    };
    t.root = t.add_node("r", 0, props());
    std::vector<std::size_t> frontier{t.root};
    for (std::size_t d = 1; d < levels; ++d) {
        std::vector<std::size_t> next;
        for (std::size_t u : frontier) {
            std::size_t k = 1 + pick(rng, max_children);
            if (distinct)
                k = std::min(k, compounds.size());
            std::vector<std::size_t> order(compounds.size());
            for (std::size_t c = 0; c < order.size(); ++c)
                order[c] = c;
            std::shuffle(order.begin(), order.end(), rng);
            for (std::size_t c = 0; c < k; ++c) {
                Label l = props();
                l.insert(action_proposition(compounds[distinct ? order[c] : pick(rng, compounds.size())]));
                std::size_t v = t.add_node("n" + std::to_string(++counter), d, l, d + 1 == levels);
                t.add_child(u, v);
                next.push_back(v);
            }
        }
        frontier = next;
    }
    return t;
}

} // namespace epimu::testing

#endif
