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

#include "epimu/atli.hpp"

#include "epimu/parallel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace epimu {

const char* to_string(SemanticsMode m)
{
    switch (m) {
    case SemanticsMode::DeRe: return "de-re";
    case SemanticsMode::DeDicto: return "de-dicto";
    case SemanticsMode::UniformOnly: return "uniform-only";
    }
    return "?";
}

SemanticsMode parse_semantics_mode(const std::string& s)
{
    if (s == "de-re")
        return SemanticsMode::DeRe;
    if (s == "de-dicto")
        return SemanticsMode::DeDicto;
    if (s == "uniform-only")
        return SemanticsMode::UniformOnly;
    throw ValidationError("unknown semantics mode " + s);
}

Objective Objective::next(StateSet target)
{
    Objective o;
    o.kind = Kind::Next;
    o.hold = StateSet(target.size());
    o.hold.set();
    o.target = std::move(target);
    return o;
}

Objective Objective::until(StateSet hold, StateSet target)
{
    Objective o;
    o.kind = Kind::Until;
    o.hold = std::move(hold);
    o.target = std::move(target);
    return o;
}

ArenaActions::ArenaActions(const QuotientSystem& q) : agents(q.arena_agents)
{
    std::map<std::string, std::vector<std::size_t>> by_prop;
    std::vector<std::vector<std::size_t>> compounds{{}};
    for (const auto& a : agents) {
        auto it = q.arena_actions.find(a);
        actions.push_back(it == q.arena_actions.end() ? std::vector<std::string>{} : it->second);
        std::vector<std::vector<std::size_t>> next;
        for (const auto& c : compounds)
            for (std::size_t k = 0; k < actions.back().size(); ++k) {
                next.push_back(c);
                next.back().push_back(k);
            }
        compounds = std::move(next);
    }
    for (const auto& c : compounds) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < c.size(); ++i)
            names.push_back(actions[i][c[i]]);
        by_prop[action_proposition(names)] = c;
    }
    stamp.resize(q.size());
    for (std::size_t s = 0; s < q.size(); ++s) {
        std::vector<std::size_t> found;
        std::size_t hits = 0;
        for (const auto& p : q.labels[s]) {
            auto it = by_prop.find(p);
            if (it != by_prop.end()) {
                found = it->second;
                ++hits;
            }
        }
        if (hits == 1)
            stamp[s] = found;
    }
}

std::size_t ArenaActions::agent_index(const std::string& a) const
{
    auto it = std::find(agents.begin(), agents.end(), a);
    return it == agents.end() ? npos : std::size_t(it - agents.begin());
}

OutcomeGraph outcomes_from(const QuotientSystem& q, const ArenaActions& arena, const Profile& p,
                           const std::vector<std::size_t>& starts)
{
    std::vector<std::pair<std::size_t, const AgentStrategy*>> constraints;
    for (const auto& s : p.strategies) {
        std::size_t i = arena.agent_index(s.agent);
        if (i == npos)
            throw ValidationError("agent " + s.agent + " has no actions in the arena");
        constraints.emplace_back(i, &s);
    }
    OutcomeGraph g;
    g.starts = starts;
    g.nodes = StateSet(q.size());
    g.blocked = StateSet(q.size());
    g.succ.assign(q.size(), {});
    std::vector<std::size_t> stack;
    for (std::size_t s : starts)
        if (!g.nodes.test(s)) {
            g.nodes.set(s);
            stack.push_back(s);
        }
    while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t c : q.children[u]) {
            const auto& st = arena.stamp[c];
            bool ok = !st.empty();
            for (std::size_t k = 0; ok && k < constraints.size(); ++k)
                ok = st[constraints[k].first] == constraints[k].second->action[u];
            if (!ok)
                continue;
            g.succ[u].push_back(c);
            if (!g.nodes.test(c)) {
                g.nodes.set(c);
                stack.push_back(c);
            }
        }
        if (g.succ[u].empty())
            g.blocked.set(u);
    }
    return g;
}

bool check_objective(const OutcomeGraph& g, const Objective& o, Blocking blocking)
{
    if (o.kind == Objective::Kind::Next) {
        for (std::size_t s : g.starts) {
            if (g.blocked.test(s) && blocking == Blocking::Strict)
                return false;
            for (std::size_t c : g.succ[s])
                if (!o.target.test(c))
                    return false;
        }
        return true;
    }

    // All outcomes satisfy hold U target iff the part reachable before the
    // target lies in hold, has no cycle and (strictly) no blocked node.
    const std::size_t n = g.succ.size();
    std::vector<int> mark(n, 0); // 0 new, 1 on the DFS path, 2 done
    std::vector<std::pair<std::size_t, std::size_t>> call;
    for (std::size_t s : g.starts) {
        if (o.target.test(s) || mark[s] == 2)
            continue;
        call.emplace_back(s, 0);
        mark[s] = 1;
        while (!call.empty()) {
            auto& [u, e] = call.back();
            if (e == 0) {
                if (!o.hold.test(u))
                    return false;
                if (blocking == Blocking::Strict && g.blocked.test(u))
                    return false;
            }
            if (e < g.succ[u].size()) {
                std::size_t c = g.succ[u][e++];
                if (o.target.test(c))
                    continue;
                if (mark[c] == 1)
                    return false;
                if (mark[c] == 0) {
                    mark[c] = 1;
                    call.emplace_back(c, 0);
                }
                continue;
            }
            mark[u] = 2;
            call.pop_back();
        }
    }
    return true;
}

std::vector<std::size_t> epistemic_starts(const QuotientSystem& q, const std::vector<std::string>& coalition,
                                          std::size_t x, bool include_self)
{
    // An empty coalition knows nothing to quantify over, so it starts where it is.
    if (coalition.empty())
        return {x};
    std::set<std::size_t> out;
    for (const auto& a : coalition) {
        std::size_t i = q.agent_index(a);
        if (i == npos)
            throw ValidationError("no relation for agent " + a);
        out.insert(q.jumps[i][x].begin(), q.jumps[i][x].end());
    }
    if (include_self)
        out.insert(x);
    return {out.begin(), out.end()};
}

std::vector<std::vector<std::size_t>> uniformity_classes(const QuotientSystem& q, const std::string& agent)
{
    std::size_t a = q.agent_index(agent);
    if (a == npos)
        throw ValidationError("no relation for agent " + agent);
    std::vector<std::size_t> parent(q.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t x = 0; x < q.size(); ++x)
        for (std::size_t y : q.jumps[a][x]) {
            std::size_t rx = root(x), ry = root(y);
            if (rx != ry)
                parent[std::max(rx, ry)] = std::min(rx, ry);
        }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t x = 0; x < q.size(); ++x)
        groups[root(x)].push_back(x);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [_, members] : groups)
        out.push_back(std::move(members));
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.front() < r.front(); });
    return out;
}

bool is_uniform(const QuotientSystem& q, const AgentStrategy& s)
{
    std::size_t a = q.agent_index(s.agent);
    if (a == npos)
        return false;
    for (std::size_t x = 0; x < q.size(); ++x)
        for (std::size_t y : q.jumps[a][x])
            if (s.action[x] != s.action[y])
                return false;
    return true;
}

std::optional<Profile> synthesize_profile(const QuotientSystem& q, const std::vector<std::string>& coalition_in,
                                          const Objective& o, const std::vector<std::size_t>& starts,
                                          const AtliOptions& opts)
{
    std::vector<std::string> coalition = coalition_in;
    std::sort(coalition.begin(), coalition.end());
    coalition.erase(std::unique(coalition.begin(), coalition.end()), coalition.end());

    ArenaActions arena(q);

    // States that any outcome from the starts may visit.
    StateSet reach(q.size());
    std::vector<std::size_t> stack(starts.begin(), starts.end());
    for (std::size_t s : starts)
        reach.set(s);
    while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t c : q.children[u])
            if (!reach.test(c)) {
                reach.set(c);
                stack.push_back(c);
            }
    }

    // One digit per relevant (agent, class); first digit most significant.
    struct Digit
    {
        std::size_t agent;
        std::vector<std::size_t> members;
        std::size_t radix;
    };
    std::vector<Digit> digits;
    for (std::size_t k = 0; k < coalition.size(); ++k) {
        std::size_t ai = arena.agent_index(coalition[k]);
        if (ai == npos || arena.actions[ai].empty())
            throw ValidationError("agent " + coalition[k] + " has no actions in the arena");
        for (auto& cls : uniformity_classes(q, coalition[k])) {
            bool relevant = std::any_of(cls.begin(), cls.end(), [&](std::size_t x) { return reach.test(x); });
            if (relevant)
                digits.push_back({k, std::move(cls), arena.actions[ai].size()});
        }
    }
    std::size_t total = 1;
    for (const auto& d : digits) {
        if (total > (std::size_t(1) << 40) / d.radix)
            throw ValidationError("too many candidate profiles to enumerate");
        total *= d.radix;
    }

    auto decode = [&](std::size_t index) {
        Profile p;
        for (const auto& a : coalition)
            p.strategies.push_back({a, std::vector<std::size_t>(q.size(), 0)});
        for (std::size_t d = digits.size(); d-- > 0;) {
            std::size_t act = index % digits[d].radix;
            index /= digits[d].radix;
            for (std::size_t x : digits[d].members)
                p.strategies[digits[d].agent].action[x] = act;
        }
        return p;
    };
    auto good = [&](std::size_t index) {
        Profile p = decode(index);
        return check_objective(outcomes_from(q, arena, p, starts), o, opts.blocking);
    };

    std::size_t found = opts.parallel ? parallel_first_index(total, good) : serial_first_index(total, good);
    if (found == npos)
        return std::nullopt;
    return decode(found);
}

std::optional<Profile> synthesize_profile_at(const QuotientSystem& q, const std::vector<std::string>& coalition,
                                             const Objective& o, std::size_t x, const AtliOptions& opts)
{
    switch (opts.mode) {
    case SemanticsMode::UniformOnly: return synthesize_profile(q, coalition, o, {x}, opts);
    case SemanticsMode::DeRe:
        return synthesize_profile(q, coalition, o, epistemic_starts(q, coalition, x, opts.include_self), opts);
    case SemanticsMode::DeDicto: {
        std::optional<Profile> first;
        auto starts = epistemic_starts(q, coalition, x, opts.include_self);
        if (starts.empty())
            return synthesize_profile(q, coalition, o, {}, opts);
        for (std::size_t y : starts) {
            auto p = synthesize_profile(q, coalition, o, {y}, opts);
            if (!p)
                return std::nullopt;
            if (!first)
                first = std::move(p);
        }
        return first;
    }
    }
    return std::nullopt;
}

namespace {

class AtlEvaluator
{
public:
    AtlEvaluator(const QuotientSystem& q, const AtliOptions& opts) : q_(q), opts_(opts) {}

    StateSet eval(const AtlFormula& f)
    {
        StateSet r(q_.size());
        switch (f->kind) {
        case AtlKind::True: r.set(); return r;
        case AtlKind::False: return r;
        case AtlKind::Prop:
            for (std::size_t s = 0; s < q_.size(); ++s)
                if (q_.labels[s].count(f->name))
                    r.set(s);
            return r;
        case AtlKind::Not: return ~eval(f->left);
        case AtlKind::Or: return eval(f->left) | eval(f->right);
        case AtlKind::And: return eval(f->left) & eval(f->right);
        case AtlKind::Next:
        case AtlKind::Until: {
            Objective o = f->kind == AtlKind::Next ? Objective::next(eval(f->left))
                                                   : Objective::until(eval(f->left), eval(f->right));
            // The answer only depends on the set of starts examined.
            std::map<std::vector<std::size_t>, bool> joint;
            std::map<std::size_t, bool> single;
            auto from = [&](const std::vector<std::size_t>& starts) {
                auto it = joint.find(starts);
                if (it != joint.end())
                    return it->second;
                bool ok = synthesize_profile(q_, f->coalition, o, starts, opts_).has_value();
                joint.emplace(starts, ok);
                return ok;
            };
            for (std::size_t x = 0; x < q_.size(); ++x) {
                bool ok = false;
                switch (opts_.mode) {
                case SemanticsMode::UniformOnly: ok = from({x}); break;
                case SemanticsMode::DeRe: ok = from(epistemic_starts(q_, f->coalition, x, opts_.include_self)); break;
                case SemanticsMode::DeDicto: {
                    auto starts = epistemic_starts(q_, f->coalition, x, opts_.include_self);
                    ok = true;
                    for (std::size_t y : starts) {
                        auto it = single.find(y);
                        bool oy = it != single.end() ? it->second : (single[y] = from({y}));
                        if (!oy) {
                            ok = false;
                            break;
                        }
                    }
                    break;
                }
                }
                if (ok)
                    r.set(x);
            }
            return r;
        }
        }
        return r;
    }

private:
    const QuotientSystem& q_;
    const AtliOptions& opts_;
};

} // namespace

StateSet eval_atl(const QuotientSystem& q, const AtlFormula& f, const AtliOptions& opts)
{
    return AtlEvaluator(q, opts).eval(f);
}

std::string to_string(const Profile& p, const QuotientSystem& q)
{
    ArenaActions arena(q);
    std::ostringstream os;
    for (const auto& s : p.strategies) {
        std::size_t ai = arena.agent_index(s.agent);
        for (const auto& cls : uniformity_classes(q, s.agent)) {
            os << "agent " << s.agent << ": class {";
            for (std::size_t i = 0; i < cls.size(); ++i)
                os << (i ? ", " : "") << q.name(cls[i]);
            std::size_t act = s.action[cls.front()];
            os << "} -> " << (ai != npos && act < arena.actions[ai].size() ? arena.actions[ai][act] : "?") << '\n';
        }
    }
    return os.str();
}

} // namespace epimu
