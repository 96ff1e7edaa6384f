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

#include "epimu/worlds.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace epimu {

// ---------------------------------------------------------------------------
// LeveledStructure
// ---------------------------------------------------------------------------

std::size_t LeveledStructure::add_node(std::string id, std::size_t depth, Label label, bool loop)
{
    if (index_.count(id))
        throw ValidationError("duplicate node id " + id);
    std::size_t n = nodes.size();
    index_[id] = n;
    nodes.push_back(StructureNode{std::move(id), depth, std::move(label), {}, loop});
    return n;
}

std::size_t LeveledStructure::find(const std::string& id) const
{
    auto it = index_.find(id);
    if (it != index_.end())
        return it->second;
    // Structures assembled field by field have no index.
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].id == id)
            return i;
    return npos;
}

std::size_t LeveledStructure::at(const std::string& id) const
{
    std::size_t n = find(id);
    if (n == npos)
        throw ValidationError("unknown node " + id);
    return n;
}

std::vector<std::size_t> LeveledStructure::successors(std::size_t n) const
{
    if (nodes[n].loop)
        return {n};
    return nodes[n].children;
}

std::size_t LeveledStructure::max_depth() const
{
    std::size_t d = 0;
    for (const auto& n : nodes)
        d = std::max(d, n.depth);
    return d;
}

std::set<std::string> LeveledStructure::alphabet() const
{
    std::set<std::string> out;
    for (const auto& n : nodes)
        out.insert(n.label.begin(), n.label.end());
    return out;
}

std::string action_proposition(const std::vector<std::string>& compound)
{
    std::string p = "p";
    for (const auto& a : compound)
        p += "_" + a;
    return p;
}

std::vector<std::string> action_propositions(const LeveledStructure& arena)
{
    std::vector<std::vector<std::string>> compounds{{}};
    for (const auto& agent : arena.agents) {
        auto it = arena.actions.find(agent);
        if (it == arena.actions.end())
            return {};
        std::vector<std::vector<std::string>> next;
        for (const auto& prefix : compounds)
            for (const auto& act : it->second) {
                next.push_back(prefix);
                next.back().push_back(act);
            }
        compounds = std::move(next);
    }
    std::vector<std::string> out;
    for (const auto& c : compounds)
        out.push_back(action_proposition(c));
    return out;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

std::vector<Diagnostic> validate(const LeveledStructure& s)
{
    std::vector<Diagnostic> out;
    if (s.nodes.empty()) {
        out.push_back({"nonempty", "", "structure has no nodes"});
        return out;
    }
    if (s.root >= s.nodes.size()) {
        out.push_back({"root", "", "root index out of range"});
        return out;
    }
    const auto& root = s.nodes[s.root];
    if (root.depth != 0)
        out.push_back({"root", root.id, "root must have depth 0"});

    std::vector<std::size_t> indegree(s.nodes.size(), 0);
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
        const auto& n = s.nodes[i];
        if (n.loop && !n.children.empty())
            out.push_back({"loop-leaf", n.id, "a loop-leaf has only its self-edge"});
        if (!n.loop && n.children.empty())
            out.push_back({"totality", n.id, "node has no successor"});
        for (std::size_t c : n.children) {
            if (c >= s.nodes.size()) {
                out.push_back({"edge", n.id, "child index out of range"});
                continue;
            }
            ++indegree[c];
            if (s.nodes[c].depth != n.depth + 1)
                out.push_back({"edge-depth", n.id, "edge to " + s.nodes[c].id + " does not go one level down"});
        }
    }
    if (indegree[s.root] != 0)
        out.push_back({"root", root.id, "root has an incoming edge"});

    std::vector<bool> seen(s.nodes.size(), false);
    std::vector<std::size_t> stack{s.root};
    seen[s.root] = true;
    while (!stack.empty()) {
        std::size_t n = stack.back();
        stack.pop_back();
        for (std::size_t c : s.nodes[n].children)
            if (c < s.nodes.size() && !seen[c]) {
                seen[c] = true;
                stack.push_back(c);
            }
    }
    for (std::size_t i = 0; i < s.nodes.size(); ++i)
        if (!seen[i])
            out.push_back({"reachable", s.nodes[i].id, "node is not reachable from the root"});
    return out;
}

std::vector<Diagnostic> validate_arena(const TreeArena& s)
{
    std::vector<Diagnostic> out = validate(s);
    if (s.nodes.empty() || s.root >= s.nodes.size())
        return out;
    for (const auto& [agent, acts] : s.actions) {
        if (std::find(s.agents.begin(), s.agents.end(), agent) == s.agents.end())
            out.push_back({"actions", "", "actions declared for unknown agent " + agent});
        if (acts.empty())
            out.push_back({"actions", "", "agent " + agent + " has no action"});
    }
    for (const auto& agent : s.agents)
        if (!s.actions.count(agent))
            out.push_back({"actions", "", "agent " + agent + " has no declared actions"});

    std::vector<std::string> props = action_propositions(s);
    std::set<std::string> act(props.begin(), props.end());
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
        const auto& n = s.nodes[i];
        std::size_t count = 0;
        for (const auto& p : n.label)
            count += act.count(p);
        if (i == s.root) {
            if (count != 0)
                out.push_back({"root-action", n.id, "root label carries an action proposition"});
        } else if (count != 1) {
            out.push_back({"action-singleton", n.id,
                           "label carries " + std::to_string(count) + " action propositions, expected exactly one"});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Unfolding
// ---------------------------------------------------------------------------

LabelWord FiniteTree::word(std::size_t n) const
{
    LabelWord w;
    for (std::size_t x = n; x != npos; x = nodes[x].parent)
        w.push_back(nodes[x].label);
    std::reverse(w.begin(), w.end());
    return w;
}

FiniteTree unfold_prefix(const LeveledStructure& s, std::size_t depth)
{
    FiniteTree t;
    t.nodes.push_back({s.root, 0, npos, s.nodes[s.root].label, {}});
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        if (t.nodes[i].depth >= depth)
            continue;
        for (std::size_t c : s.successors(t.nodes[i].origin)) {
            std::size_t id = t.nodes.size();
            t.nodes.push_back({c, t.nodes[i].depth + 1, i, s.nodes[c].label, {}});
            t.nodes[i].children.push_back(id);
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// Recognizable relations
// ---------------------------------------------------------------------------

std::size_t RecognizableRelation::letter(const Label& l) const
{
    std::size_t m = 0;
    for (std::size_t b = 0; b < props.size(); ++b)
        if (l.count(props[b]))
            m |= std::size_t(1) << b;
    return m;
}

std::vector<std::size_t> RecognizableRelation::letters(const LabelWord& w) const
{
    std::vector<std::size_t> out;
    out.reserve(w.size());
    for (const auto& l : w)
        out.push_back(letter(l));
    return out;
}

bool relate(const RecognizableRelation& r, const LabelWord& w, const LabelWord& w2)
{
    auto a = r.letters(w);
    auto b = r.letters(w2);
    for (const auto& [left, right] : r.pairs)
        if (left.accepts(a) && right.accepts(b))
            return true;
    return false;
}

std::size_t rel_size(const RecognizableRelation& r)
{
    // Deterministic product: before '#' track every left run, after '#' the
    // right runs of the pairs whose left run accepted.
    const std::size_t sigma = r.num_letters();
    const std::size_t sep = sigma;
    const std::size_t m = r.pairs.size();

    using Key = std::pair<int, std::vector<std::size_t>>; // phase 1 or 2; sink is phase 0
    std::map<Key, std::size_t> ids;
    std::vector<Key> keys;
    auto intern = [&](Key k) {
        if (k.first == 2 && std::all_of(k.second.begin(), k.second.end(), [](std::size_t s) { return s == npos; }))
            k = Key{0, {}};
        auto [it, fresh] = ids.emplace(k, keys.size());
        if (fresh)
            keys.push_back(k);
        return it->second;
    };

    std::vector<std::size_t> init(m);
    for (std::size_t k = 0; k < m; ++k)
        init[k] = r.pairs[k].first.initial;
    intern(Key{1, init});

    Dfa d;
    d.num_letters = sigma + 1;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const Key key = keys[i];
        std::vector<std::size_t> row(sigma + 1);
        for (std::size_t c = 0; c <= sigma; ++c) {
            if (key.first == 0) {
                row[c] = intern(Key{0, {}});
            } else if (key.first == 1) {
                std::vector<std::size_t> v(m);
                if (c == sep) {
                    for (std::size_t k = 0; k < m; ++k)
                        v[k] = r.pairs[k].first.accepting[key.second[k]] ? r.pairs[k].second.initial : npos;
                    row[c] = intern(Key{2, v});
                } else {
                    for (std::size_t k = 0; k < m; ++k)
                        v[k] = r.pairs[k].first.next(key.second[k], c);
                    row[c] = intern(Key{1, v});
                }
            } else if (c == sep) {
                row[c] = intern(Key{0, {}});
            } else {
                std::vector<std::size_t> v(m);
                for (std::size_t k = 0; k < m; ++k)
                    v[k] = key.second[k] == npos ? npos : r.pairs[k].second.next(key.second[k], c);
                row[c] = intern(Key{2, v});
            }
        }
        d.delta.insert(d.delta.end(), row.begin(), row.end());
    }
    d.num_states = keys.size();
    d.initial = 0;
    d.accepting.resize(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        bool acc = false;
        if (keys[i].first == 2)
            for (std::size_t k = 0; k < m; ++k)
                if (keys[i].second[k] != npos && r.pairs[k].second.accepting[keys[i].second[k]])
                    acc = true;
        d.accepting[i] = acc;
    }
    return minimize(d).num_states;
}

AgentRelation AgentRelation::explicit_pairs(std::vector<std::pair<StateRef, StateRef>> p)
{
    AgentRelation r;
    r.kind = Kind::Explicit;
    r.pairs = std::move(p);
    return r;
}

AgentRelation AgentRelation::recognizable_relation(RecognizableRelation rel)
{
    AgentRelation r;
    r.kind = Kind::Recognizable;
    r.recognizable = std::move(rel);
    return r;
}

RelationProfile RelationProfile::equal_level(const std::set<std::string>& agents)
{
    RelationProfile p;
    for (const auto& a : agents)
        p.agents[a] = AgentRelation::equal_level();
    return p;
}

// ---------------------------------------------------------------------------
// Quotient
// ---------------------------------------------------------------------------

std::size_t QuotientSystem::agent_index(const std::string& agent) const
{
    auto it = std::find(agents.begin(), agents.end(), agent);
    return it == agents.end() ? npos : std::size_t(it - agents.begin());
}

bool QuotientSystem::related(std::size_t agent, std::size_t x, std::size_t y) const
{
    const auto& succ = jumps[agent][x];
    return std::binary_search(succ.begin(), succ.end(), y);
}

std::string QuotientSystem::name(std::size_t s) const
{
    const auto& st = states[s];
    std::string out = node_ids[st.node] + "@" + (st.level == kInfiniteLevel ? "inf" : std::to_string(st.level));
    std::size_t rank = 0, total = 0;
    for (std::size_t t = 0; t < states.size(); ++t)
        if (states[t].node == st.node && states[t].level == st.level) {
            if (t < s)
                ++rank;
            ++total;
        }
    if (total > 1)
        out += "#" + std::to_string(rank);
    return out;
}

std::vector<std::size_t> QuotientSystem::states_of(const std::string& node_id) const
{
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < states.size(); ++s)
        if (node_ids[states[s].node] == node_id)
            out.push_back(s);
    return out;
}

std::vector<std::size_t> QuotientSystem::resolve(const StateRef& ref) const
{
    std::vector<std::size_t> out;
    for (std::size_t s : states_of(ref.node)) {
        std::size_t lvl = states[s].level;
        bool match = true;
        if (ref.infinite)
            match = lvl == kInfiniteLevel;
        else if (ref.level)
            match = *ref.level >= max_depth ? lvl == kInfiniteLevel : lvl == *ref.level;
        if (match)
            out.push_back(s);
    }
    return out;
}

TransitionSystem QuotientSystem::as_transition_system() const
{
    TransitionSystem t;
    t.labels = labels;
    t.relations.push_back(children);
    for (const auto& j : jumps)
        t.relations.push_back(j);
    t.initial = root;
    return t;
}

namespace {

/// Clamped level of a child.
std::size_t next_level(std::size_t level, std::size_t max_depth)
{
    if (level == kInfiniteLevel || level + 1 >= max_depth)
        return kInfiniteLevel;
    return level + 1;
}

} // namespace

QuotientSystem build_quotient(const LeveledStructure& s, const RelationProfile& r)
{
    auto diags = validate(s);
    if (!diags.empty())
        throw ValidationError("invalid structure: " + diags.front().clause + " at " + diags.front().node + ": " +
                              diags.front().message);

    QuotientSystem q;
    q.source = &s;
    q.max_depth = s.max_depth();
    q.arena_agents = s.agents;
    q.arena_actions = s.actions;
    for (const auto& n : s.nodes)
        q.node_ids.push_back(n.id);
    for (const auto& [agent, _] : r.agents)
        q.agents.push_back(agent);

    // Every recognizable automaton contributes one slot to the run vector.
    struct Slot
    {
        const Dfa* dfa;
        const RecognizableRelation* rel;
    };
    std::vector<Slot> slots;
    std::vector<std::size_t> offset(q.agents.size(), npos);
    for (std::size_t a = 0; a < q.agents.size(); ++a) {
        const auto& rel = r.agents.at(q.agents[a]);
        if (rel.kind != AgentRelation::Kind::Recognizable)
            continue;
        offset[a] = slots.size();
        for (const auto& [left, right] : rel.recognizable.pairs) {
            left.check();
            right.check();
            if (left.num_letters != rel.recognizable.num_letters() ||
                right.num_letters != rel.recognizable.num_letters())
                throw ValidationError("relation automaton alphabet does not match its propositions");
            slots.push_back({&left, &rel.recognizable});
            slots.push_back({&right, &rel.recognizable});
        }
    }

    auto advance = [&](std::vector<std::size_t> v, const Label& l) {
        for (std::size_t k = 0; k < slots.size(); ++k)
            v[k] = slots[k].dfa->next(v[k], slots[k].rel->letter(l));
        return v;
    };

    std::map<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>, std::size_t> index;
    auto intern = [&](QuotientState st) {
        auto key = std::make_tuple(st.node, st.level, st.dfa);
        auto [it, fresh] = index.emplace(key, q.states.size());
        if (fresh) {
            q.labels.push_back(s.nodes[st.node].label);
            q.states.push_back(std::move(st));
        }
        return it->second;
    };

    std::vector<std::size_t> init(slots.size());
    for (std::size_t k = 0; k < slots.size(); ++k)
        init[k] = slots[k].dfa->initial;
    QuotientState root{s.root, q.max_depth == 0 ? kInfiniteLevel : 0, advance(init, s.nodes[s.root].label)};
    q.root = intern(root);

    for (std::size_t i = 0; i < q.states.size(); ++i) {
        const QuotientState cur = q.states[i];
        std::vector<std::size_t> kids;
        for (std::size_t c : s.successors(cur.node)) {
            std::size_t id = intern({c, next_level(cur.level, q.max_depth), advance(cur.dfa, s.nodes[c].label)});
            if (std::find(kids.begin(), kids.end(), id) == kids.end())
                kids.push_back(id);
        }
        q.children.push_back(std::move(kids));
    }

    const std::size_t n = q.states.size();
    for (std::size_t a = 0; a < q.agents.size(); ++a) {
        const auto& rel = r.agents.at(q.agents[a]);
        std::vector<std::vector<std::size_t>> succ(n);
        switch (rel.kind) {
        case AgentRelation::Kind::EqualLevel:
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y)
                    if (q.states[x].level == q.states[y].level)
                        succ[x].push_back(y);
            break;
        case AgentRelation::Kind::Recognizable:
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y)
                    for (std::size_t k = 0; k < rel.recognizable.pairs.size(); ++k) {
                        std::size_t lo = offset[a] + 2 * k;
                        if (slots[lo].dfa->accepting[q.states[x].dfa[lo]] &&
                            slots[lo + 1].dfa->accepting[q.states[y].dfa[lo + 1]]) {
                            succ[x].push_back(y);
                            break;
                        }
                    }
            break;
        case AgentRelation::Kind::Explicit:
            for (const auto& [from, to] : rel.pairs) {
                auto xs = q.resolve(from);
                auto ys = q.resolve(to);
                if (xs.empty() || ys.empty())
                    throw ValidationError("explicit pair references no state: " +
                                          (xs.empty() ? from.node : to.node));
                for (std::size_t x : xs)
                    for (std::size_t y : ys)
                        succ[x].push_back(y);
            }
            for (auto& v : succ) {
                std::sort(v.begin(), v.end());
                v.erase(std::unique(v.begin(), v.end()), v.end());
            }
            break;
        }
        q.jumps.push_back(std::move(succ));
    }
    return q;
}

TransitionSystem annotate_prefix(const FiniteTree& t, const LeveledStructure&, const RelationProfile& r,
                                 const QuotientSystem& q)
{
    const std::size_t n = t.nodes.size();

    std::vector<std::size_t> image(n, npos);
    image[0] = q.root;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c : t.nodes[i].children)
            for (std::size_t qc : q.children[image[i]])
                if (q.states[qc].node == t.nodes[c].origin)
                    image[c] = qc;

    TransitionSystem ts;
    ts.initial = 0;
    ts.relations.emplace_back(n);
    for (std::size_t i = 0; i < n; ++i) {
        ts.labels.push_back(t.nodes[i].label);
        ts.relations[0][i] = t.nodes[i].children;
        if (t.nodes[i].children.empty())
            ts.relations[0][i].push_back(i);
    }
    for (const auto& agent : q.agents) {
        const auto& rel = r.agents.at(agent);
        std::size_t a = q.agent_index(agent);
        std::vector<std::vector<std::size_t>> succ(n);
        std::vector<LabelWord> words;
        if (rel.kind == AgentRelation::Kind::Recognizable)
            for (std::size_t i = 0; i < n; ++i)
                words.push_back(t.word(i));
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                bool rel_xy = false;
                switch (rel.kind) {
                case AgentRelation::Kind::EqualLevel: rel_xy = t.nodes[x].depth == t.nodes[y].depth; break;
                case AgentRelation::Kind::Recognizable: rel_xy = relate(rel.recognizable, words[x], words[y]); break;
                case AgentRelation::Kind::Explicit: rel_xy = q.related(a, image[x], image[y]); break;
                }
                if (rel_xy)
                    succ[x].push_back(y);
            }
        ts.relations.push_back(std::move(succ));
    }
    return ts;
}

} // namespace epimu
