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

#include "epimu/jta.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace epimu {

namespace bp {

namespace {
BoolPos make(BoolKind k, BoolPos l = nullptr, BoolPos r = nullptr)
{
    return std::make_shared<const BoolNode>(BoolNode{k, Dir::Dia, {}, 0, std::move(l), std::move(r)});
}
} // namespace

BoolPos top()
{
    static const BoolPos t = make(BoolKind::True);
    return t;
}

BoolPos bottom()
{
    static const BoolPos f = make(BoolKind::False);
    return f;
}

BoolPos atom(Dir dir, std::size_t state, std::string agent)
{
    return std::make_shared<const BoolNode>(BoolNode{BoolKind::Atom, dir, std::move(agent), state, nullptr, nullptr});
}

BoolPos disj(BoolPos a, BoolPos b)
{
    if (a->kind == BoolKind::True || b->kind == BoolKind::False)
        return a;
    if (b->kind == BoolKind::True || a->kind == BoolKind::False)
        return b;
    return make(BoolKind::Or, std::move(a), std::move(b));
}

BoolPos conj(BoolPos a, BoolPos b)
{
    if (a->kind == BoolKind::False || b->kind == BoolKind::True)
        return a;
    if (b->kind == BoolKind::False || a->kind == BoolKind::True)
        return b;
    return make(BoolKind::And, std::move(a), std::move(b));
}

} // namespace bp

std::size_t bool_size(const BoolPos& b)
{
    std::size_t n = 1;
    if (b->left)
        n += bool_size(b->left);
    if (b->right)
        n += bool_size(b->right);
    return n;
}

bool structurally_equal(const BoolPos& a, const BoolPos& b)
{
    if (a == b)
        return true;
    if (a->kind != b->kind)
        return false;
    switch (a->kind) {
    case BoolKind::True:
    case BoolKind::False: return true;
    case BoolKind::Atom: return a->dir == b->dir && a->state == b->state && a->agent == b->agent;
    default: return structurally_equal(a->left, b->left) && structurally_equal(a->right, b->right);
    }
}

// ---------------------------------------------------------------------------
// Jta
// ---------------------------------------------------------------------------

std::size_t Jta::letter(const Label& l) const
{
    std::size_t m = 0;
    for (std::size_t b = 0; b < props.size(); ++b)
        if (l.count(props[b]))
            m |= std::size_t(1) << b;
    return m;
}

std::set<std::string> Jta::agents() const
{
    std::set<std::string> out;
    std::function<void(const BoolPos&)> rec = [&](const BoolPos& b) {
        if (b->kind == BoolKind::Atom && (b->dir == Dir::JumpDia || b->dir == Dir::JumpBox))
            out.insert(b->agent);
        if (b->left)
            rec(b->left);
        if (b->right)
            rec(b->right);
    };
    for (const auto& row : delta)
        for (const auto& b : row)
            rec(b);
    return out;
}

std::size_t Jta::size() const
{
    std::size_t total = 0;
    for (std::size_t q = 0; q < delta.size(); ++q) {
        std::set<std::string> distinct;
        for (const auto& b : delta[q])
            if (distinct.insert(to_string(b, *this)).second)
                total += bool_size(b);
    }
    return total;
}

std::size_t Jta::find_state(const std::string& name) const
{
    auto it = std::find(state_names.begin(), state_names.end(), name);
    return it == state_names.end() ? npos : std::size_t(it - state_names.begin());
}

void Jta::check() const
{
    const std::size_t n = num_states();
    if (n == 0)
        throw ValidationError("automaton has no states");
    if (initial >= n)
        throw ValidationError("initial state out of range");
    if (colors.size() != n || delta.size() != n)
        throw ValidationError("automaton vectors have inconsistent sizes");
    std::function<void(const BoolPos&)> rec = [&](const BoolPos& b) {
        if (!b)
            throw ValidationError("missing transition");
        if (b->kind == BoolKind::Atom) {
            if (b->state >= n)
                throw ValidationError("transition atom references an undeclared state");
            bool jump = b->dir == Dir::JumpDia || b->dir == Dir::JumpBox;
            if (jump == b->agent.empty())
                throw ValidationError("jump atoms need an agent, child atoms none");
        }
        if (b->left)
            rec(b->left);
        if (b->right)
            rec(b->right);
    };
    for (const auto& row : delta) {
        if (row.size() != num_letters())
            throw ValidationError("transition function is not total");
        for (const auto& b : row)
            rec(b);
    }
}

std::string to_string(const BoolPos& b, const Jta& a)
{
    switch (b->kind) {
    case BoolKind::True: return "true";
    case BoolKind::False: return "false";
    case BoolKind::Atom: {
        std::string q = b->state < a.state_names.size() ? a.state_names[b->state] : std::to_string(b->state);
        switch (b->dir) {
        case Dir::Dia: return "(<>, " + q + ")";
        case Dir::Box: return "([], " + q + ")";
        case Dir::JumpDia: return "(jdia " + b->agent + ", " + q + ")";
        case Dir::JumpBox: return "(jbox " + b->agent + ", " + q + ")";
        }
        return {};
    }
    case BoolKind::Or: return "(" + to_string(b->left, a) + " | " + to_string(b->right, a) + ")";
    case BoolKind::And: return "(" + to_string(b->left, a) + " & " + to_string(b->right, a) + ")";
    }
    return {};
}

std::string to_string(const Jta& a)
{
    std::ostringstream os;
    os << "props:";
    for (std::size_t i = 0; i < a.props.size(); ++i)
        os << (i ? "," : " ") << a.props[i];
    os << '\n';
    for (std::size_t q = 0; q < a.num_states(); ++q)
        os << "state " << a.state_names[q] << " color " << a.colors[q] << '\n';
    os << "initial " << a.state_names[a.initial] << '\n';
    for (std::size_t q = 0; q < a.num_states(); ++q) {
        const auto& row = a.delta[q];
        bool uniform = std::all_of(row.begin(), row.end(),
                                   [&](const BoolPos& b) { return structurally_equal(b, row.front()); });
        if (uniform) {
            os << "on " << a.state_names[q] << " * := " << to_string(row.front(), a) << '\n';
            continue;
        }
        for (std::size_t m = 0; m < row.size(); ++m) {
            os << "on " << a.state_names[q] << " {";
            bool first = true;
            for (std::size_t b = 0; b < a.props.size(); ++b)
                if (m & (std::size_t(1) << b)) {
                    os << (first ? "" : ",") << a.props[b];
                    first = false;
                }
            os << "} := " << to_string(row[m], a) << '\n';
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Acceptance game
// ---------------------------------------------------------------------------

std::size_t AcceptanceGame::formula_id(const BoolPos& b) const
{
    auto hit = pointer_ids.find(b.get());
    if (hit != pointer_ids.end())
        return hit->second;
    std::size_t l = b->left ? formula_id(b->left) : npos;
    std::size_t r = b->right ? formula_id(b->right) : npos;
    auto key = std::make_tuple(static_cast<int>(b->kind), static_cast<int>(b->dir), b->agent, b->state, l, r);
    std::size_t id = pool.emplace(key, pool.size()).first->second;
    pointer_ids.emplace(b.get(), id);
    return id;
}

std::size_t AcceptanceGame::find(std::size_t x, std::size_t q, const BoolPos& alpha) const
{
    auto it = index.find({x, q, formula_id(alpha)});
    return it == index.end() ? npos : it->second;
}

std::string AcceptanceGame::describe(std::size_t v) const
{
    const auto& p = positions[v];
    return "(" + quotient->name(p.x) + ", " + automaton->state_names[p.q] + ", " + to_string(p.alpha, *automaton) +
           ")";
}

namespace {

Player owner_of(const BoolPos& b)
{
    switch (b->kind) {
    case BoolKind::True:
    case BoolKind::Or: return Player::Eve;
    case BoolKind::False:
    case BoolKind::And: return Player::Adam;
    case BoolKind::Atom: return (b->dir == Dir::Dia || b->dir == Dir::JumpDia) ? Player::Eve : Player::Adam;
    }
    return Player::Eve;
}

} // namespace

AcceptanceGame build_acceptance_game(const Jta& a, const QuotientSystem& qs,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& seeds)
{
    a.check();
    for (const auto& agent : a.agents())
        if (qs.agent_index(agent) == npos)
            throw ValidationError("automaton jumps along agent " + agent + " which the profile does not define");

    AcceptanceGame g;
    g.automaton = &a;
    g.quotient = &qs;

    std::vector<std::size_t> work;
    auto intern = [&](std::size_t x, std::size_t q, const BoolPos& alpha) {
        auto key = std::make_tuple(x, q, g.formula_id(alpha));
        auto it = g.index.find(key);
        if (it != g.index.end())
            return it->second;
        std::size_t v = g.game.add_position(owner_of(alpha), a.colors[q]);
        g.positions.push_back({x, q, alpha});
        g.game.names[v] = g.describe(v);
        g.index.emplace(key, v);
        work.push_back(v);
        return v;
    };
    auto entry = [&](std::size_t x, std::size_t q) { return intern(x, q, a.transition(q, qs.labels[x])); };

    g.game.initial = entry(qs.root, a.initial);
    for (auto [x, q] : seeds)
        entry(x, q);

    while (!work.empty()) {
        std::size_t v = work.back();
        work.pop_back();
        const auto pos = g.positions[v];
        const BoolPos& alpha = pos.alpha;
        switch (alpha->kind) {
        case BoolKind::True: g.game.set_terminal(v, Player::Eve); break;
        case BoolKind::False: g.game.set_terminal(v, Player::Adam); break;
        case BoolKind::Or:
        case BoolKind::And: {
            std::size_t l = intern(pos.x, pos.q, alpha->left);
            std::size_t r = intern(pos.x, pos.q, alpha->right);
            g.game.add_move(v, l);
            g.game.add_move(v, r);
            break;
        }
        case BoolKind::Atom: {
            const std::vector<std::size_t>* targets = &qs.children[pos.x];
            if (alpha->dir == Dir::JumpDia || alpha->dir == Dir::JumpBox)
                targets = &qs.jumps[qs.agent_index(alpha->agent)][pos.x];
            for (std::size_t y : *targets) {
                std::size_t u = entry(y, alpha->state);
                g.game.add_move(v, u);
            }
            break;
        }
        }
    }
    return g;
}

bool accepts(const Jta& a, const LeveledStructure& s, const RelationProfile& r)
{
    QuotientSystem q = build_quotient(s, r);
    AcceptanceGame g = build_acceptance_game(a, q);
    return solve(g.game).eve.test(g.game.initial);
}

std::set<std::size_t> visit_set(const AcceptanceGame& g, const PositionalStrategy& s, std::size_t node)
{
    const ParityGame& pg = g.game;
    std::vector<bool> seen(pg.size(), false);
    std::vector<std::size_t> stack{pg.initial};
    seen[pg.initial] = true;
    std::set<std::size_t> out;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        if (g.positions[v].x == node)
            out.insert(g.positions[v].q);
        if (pg.is_terminal(v))
            continue;
        std::vector<std::size_t> next;
        if (pg.owner[v] == Player::Eve) {
            std::size_t c = s(v);
            if (c == npos)
                throw ValidationError("strategy undefined at reachable position " + pg.names[v]);
            next.push_back(c);
        } else {
            next = pg.moves[v];
        }
        for (std::size_t u : next)
            if (!seen[u]) {
                seen[u] = true;
                stack.push_back(u);
            }
    }
    return out;
}

} // namespace epimu
