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

#include "epimu/games.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <tuple>

namespace epimu {

const char* to_string(Player p) { return p == Player::Eve ? "Eve" : "Adam"; }

std::size_t ParityGame::add_position(Player o, unsigned c, std::string name)
{
    owner.push_back(o);
    color.push_back(c);
    moves.emplace_back();
    declared_winner.emplace_back();
    if (name.empty())
        name = "v" + std::to_string(names.size());
    names.push_back(std::move(name));
    return owner.size() - 1;
}

void ParityGame::add_move(std::size_t from, std::size_t to)
{
    auto& m = moves[from];
    if (std::find(m.begin(), m.end(), to) == m.end())
        m.push_back(to);
}

void ParityGame::set_terminal(std::size_t pos, Player winner) { declared_winner[pos] = winner; }

Player ParityGame::terminal_winner(std::size_t v) const
{
    if (declared_winner[v])
        return *declared_winner[v];
    return opponent(owner[v]);
}

std::size_t ParityGame::find(const std::string& name) const
{
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name)
            return i;
    return npos;
}

void ParityGame::check() const
{
    const std::size_t n = size();
    if (color.size() != n || moves.size() != n || declared_winner.size() != n || names.size() != n)
        throw ValidationError("game vectors have inconsistent sizes");
    if (n > 0 && initial >= n)
        throw ValidationError("initial position out of range");
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t u : moves[v])
            if (u >= n)
                throw ValidationError("move from " + names[v] + " to an undeclared position");
}

// ---------------------------------------------------------------------------
// Zielonka
// ---------------------------------------------------------------------------

namespace {

/// Game in which terminals have become self-loops coloured for their winner.
struct Arena
{
    std::size_t n = 0;
    std::vector<int> owner;
    std::vector<unsigned> color;
    std::vector<std::vector<std::size_t>> succ;
    std::vector<std::vector<std::size_t>> pred;

    explicit Arena(const ParityGame& g) : n(g.size()), owner(n), color(g.color), succ(n), pred(n)
    {
        for (std::size_t v = 0; v < n; ++v) {
            owner[v] = static_cast<int>(g.owner[v]);
            if (g.is_terminal(v)) {
                succ[v] = {v};
                color[v] = g.terminal_winner(v) == Player::Eve ? 0 : 1;
            } else {
                succ[v] = g.moves[v];
            }
            std::sort(succ[v].begin(), succ[v].end());
        }
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t u : succ[v])
                pred[u].push_back(v);
    }
};

class Zielonka
{
public:
    explicit Zielonka(const Arena& a) : a_(a), choice_(a.n, npos) {}

    std::pair<StateSet, StateSet> run()
    {
        StateSet all(a_.n);
        all.set();
        auto w = solve(all);
        return {w[0], w[1]};
    }

    const std::vector<std::size_t>& choice() const { return choice_; }

private:
    std::size_t smallest_successor_in(std::size_t v, const StateSet& s) const
    {
        for (std::size_t u : a_.succ[v])
            if (s.test(u))
                return u;
        return npos;
    }

    StateSet attractor(int p, const StateSet& target, const StateSet& sub)
    {
        StateSet attr = target;
        std::vector<std::size_t> remaining(a_.n, 0);
        std::vector<std::size_t> queue;
        for (std::size_t v = sub.find_first(); v != StateSet::npos; v = sub.find_next(v)) {
            for (std::size_t u : a_.succ[v])
                remaining[v] += sub.test(u);
            if (target.test(v))
                queue.push_back(v);
        }
        for (std::size_t i = 0; i < queue.size(); ++i) {
            std::size_t u = queue[i];
            for (std::size_t v : a_.pred[u]) {
                if (!sub.test(v) || attr.test(v))
                    continue;
                if (a_.owner[v] == p) {
                    choice_[v] = smallest_successor_in(v, attr);
                    attr.set(v);
                    queue.push_back(v);
                } else if (--remaining[v] == 0) {
                    attr.set(v);
                    queue.push_back(v);
                }
            }
        }
        return attr;
    }

    std::array<StateSet, 2> solve(const StateSet& sub)
    {
        std::array<StateSet, 2> w{StateSet(a_.n), StateSet(a_.n)};
        if (sub.none())
            return w;
        unsigned d = ~0u;
        for (std::size_t v = sub.find_first(); v != StateSet::npos; v = sub.find_next(v))
            d = std::min(d, a_.color[v]);
        const int p = static_cast<int>(d % 2);
        StateSet top(a_.n);
        for (std::size_t v = sub.find_first(); v != StateSet::npos; v = sub.find_next(v))
            if (a_.color[v] == d)
                top.set(v);

        StateSet attr = attractor(p, top, sub);
        auto w1 = solve(sub - attr);
        if (w1[1 - p].none()) {
            w[p] = sub;
            for (std::size_t v = top.find_first(); v != StateSet::npos; v = top.find_next(v))
                if (a_.owner[v] == p)
                    choice_[v] = smallest_successor_in(v, sub);
            return w;
        }
        StateSet back = attractor(1 - p, w1[1 - p], sub);
        auto w2 = solve(sub - back);
        w[p] = w2[p];
        w[1 - p] = w2[1 - p] | back;
        return w;
    }

    const Arena& a_;
    std::vector<std::size_t> choice_;
};

/// Product of a game with a strategy of `player`, explored from one position.
struct Product
{
    std::vector<std::pair<std::size_t, std::size_t>> nodes; // (memory, position)
    std::vector<std::vector<std::size_t>> succ;
};

template <class Choose, class Update>
StrategyCheck check_product(const ParityGame& g, Player player, std::size_t from, std::size_t m0, Choose&& choose,
                            Update&& update)
{
    StrategyCheck res;
    if (from >= g.size()) {
        res.diagnostic = "start position out of range";
        return res;
    }
    Product prod;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
    auto intern = [&](std::size_t m, std::size_t v) {
        auto [it, fresh] = index.emplace(std::make_pair(m, v), prod.nodes.size());
        if (fresh) {
            prod.nodes.emplace_back(m, v);
            prod.succ.emplace_back();
        }
        return it->second;
    };
    intern(m0, from);
    for (std::size_t i = 0; i < prod.nodes.size(); ++i) {
        auto [m, v] = prod.nodes[i];
        if (g.is_terminal(v)) {
            if (g.terminal_winner(v) != player) {
                res.diagnostic = "reaches terminal " + g.names[v] + " won by " + to_string(opponent(player));
                return res;
            }
            continue;
        }
        if (g.owner[v] == player) {
            std::size_t c = choose(m, v);
            if (c == npos) {
                res.diagnostic = "strategy undefined at reachable position " + g.names[v];
                return res;
            }
            if (std::find(g.moves[v].begin(), g.moves[v].end(), c) == g.moves[v].end()) {
                res.diagnostic = "strategy plays an illegal move at " + g.names[v];
                return res;
            }
            std::size_t id = intern(update(m, c), c);
            prod.succ[i].push_back(id);
        } else {
            for (std::size_t u : g.moves[v]) {
                std::size_t id = intern(update(m, u), u);
                prod.succ[i].push_back(id);
            }
        }
    }

    // A losing cycle exists iff, for some colour c bad for the player, the
    // subgraph of colours >= c has a non-trivial SCC containing colour c.
    const std::size_t n = prod.nodes.size();
    std::set<unsigned> colours;
    for (auto [m, v] : prod.nodes)
        colours.insert(g.color[v]);
    for (unsigned c : colours) {
        if (parity_owner(c) == player)
            continue;
        std::vector<bool> keep(n);
        for (std::size_t i = 0; i < n; ++i)
            keep[i] = g.color[prod.nodes[i].second] >= c;

        // Iterative Tarjan on the kept subgraph.
        std::vector<std::size_t> idx(n, npos), low(n, 0), comp(n, npos);
        std::vector<bool> on_stack(n, false);
        std::vector<std::size_t> stack;
        std::size_t counter = 0, ncomp = 0;
        std::vector<std::pair<std::size_t, std::size_t>> call; // (node, next edge)
        for (std::size_t root = 0; root < n; ++root) {
            if (!keep[root] || idx[root] != npos)
                continue;
            call.emplace_back(root, 0);
            idx[root] = low[root] = counter++;
            stack.push_back(root);
            on_stack[root] = true;
            while (!call.empty()) {
                auto& [v, e] = call.back();
                if (e < prod.succ[v].size()) {
                    std::size_t u = prod.succ[v][e++];
                    if (!keep[u])
                        continue;
                    if (idx[u] == npos) {
                        idx[u] = low[u] = counter++;
                        stack.push_back(u);
                        on_stack[u] = true;
                        call.emplace_back(u, 0);
                    } else if (on_stack[u]) {
                        low[v] = std::min(low[v], idx[u]);
                    }
                    continue;
                }
                std::size_t done = v;
                call.pop_back();
                if (!call.empty())
                    low[call.back().first] = std::min(low[call.back().first], low[done]);
                if (low[done] == idx[done]) {
                    std::size_t w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = ncomp;
                    } while (w != done);
                    ++ncomp;
                }
            }
        }
        std::vector<std::size_t> comp_size(ncomp, 0);
        for (std::size_t i = 0; i < n; ++i)
            if (keep[i])
                ++comp_size[comp[i]];
        for (std::size_t i = 0; i < n; ++i) {
            if (!keep[i] || g.color[prod.nodes[i].second] != c)
                continue;
            bool cyclic = comp_size[comp[i]] > 1 ||
                          std::find(prod.succ[i].begin(), prod.succ[i].end(), i) != prod.succ[i].end();
            if (cyclic) {
                res.diagnostic = "reachable cycle with least colour " + std::to_string(c) + " through " +
                                 g.names[prod.nodes[i].second];
                return res;
            }
        }
    }
    res.winning = true;
    return res;
}

} // namespace

Solution solve(const ParityGame& g)
{
    g.check();
    Arena a(g);
    Zielonka z(a);
    auto [eve, adam] = z.run();
    Solution s;
    s.eve = eve;
    s.adam = adam;
    s.eve_strategy.choice.assign(g.size(), npos);
    s.adam_strategy.choice.assign(g.size(), npos);
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (g.is_terminal(v))
            continue;
        if (g.owner[v] == Player::Eve && eve.test(v))
            s.eve_strategy.choice[v] = z.choice()[v];
        if (g.owner[v] == Player::Adam && adam.test(v))
            s.adam_strategy.choice[v] = z.choice()[v];
    }
    return s;
}

StrategyCheck verify_strategy(const ParityGame& g, const PositionalStrategy& s, std::size_t from, Player player)
{
    return check_product(
        g, player, from, 0, [&](std::size_t, std::size_t v) { return s(v); },
        [](std::size_t m, std::size_t) { return m; });
}

StrategyCheck verify_strategy(const ParityGame& g, const FiniteMemoryStrategy& s, std::size_t from, Player player)
{
    return check_product(
        g, player, from, s.initial_memory, [&](std::size_t m, std::size_t v) { return s.choose(m, v); },
        [&](std::size_t m, std::size_t to) { return s.update ? s.update(m, to) : m; });
}

// ---------------------------------------------------------------------------
// Bisimulation
// ---------------------------------------------------------------------------

BisimulationCheck check_bisimulation(const ParityGame& g, const ParityGame& g2, const PairSet& z)
{
    auto fail = [](std::string clause, std::size_t v, std::size_t v2, std::string detail) {
        BisimulationCheck r;
        r.ok = false;
        r.clause = std::move(clause);
        r.left = v;
        r.right = v2;
        r.detail = std::move(detail);
        return r;
    };
    for (auto [v, v2] : z) {
        if (v >= g.size() || v2 >= g2.size())
            return fail("range", v, v2, "pair references a missing position");
        if (g.color[v] != g2.color[v2])
            return fail("colour harmony", v, v2, g.names[v] + " / " + g2.names[v2]);
        if (g.owner[v] != g2.owner[v2])
            return fail("owner harmony", v, v2, g.names[v] + " / " + g2.names[v2]);
        if (g.is_terminal(v) != g2.is_terminal(v2) ||
            (g.is_terminal(v) && g.terminal_winner(v) != g2.terminal_winner(v2)))
            return fail("terminal harmony", v, v2, g.names[v] + " / " + g2.names[v2]);
        for (std::size_t u : g.moves[v]) {
            bool matched = std::any_of(g2.moves[v2].begin(), g2.moves[v2].end(),
                                       [&](std::size_t u2) { return z.count({u, u2}) > 0; });
            if (!matched)
                return fail("zig", v, v2, "move to " + g.names[u] + " has no related answer");
        }
        for (std::size_t u2 : g2.moves[v2]) {
            bool matched = std::any_of(g.moves[v].begin(), g.moves[v].end(),
                                       [&](std::size_t u) { return z.count({u, u2}) > 0; });
            if (!matched)
                return fail("zag", v, v2, "move to " + g2.names[u2] + " has no related answer");
        }
    }
    return {};
}

namespace {

/// Coarsest stable partition of a disjoint union, given initial classes and
/// per-relation successor lists.
std::vector<std::size_t> refine(std::vector<std::size_t> block,
                                const std::vector<std::vector<std::vector<std::size_t>>>& relations)
{
    const std::size_t n = block.size();
    for (;;) {
        std::map<std::vector<std::size_t>, std::size_t> sig_ids;
        std::vector<std::size_t> next(n);
        for (std::size_t v = 0; v < n; ++v) {
            std::vector<std::size_t> sig{block[v]};
            for (const auto& rel : relations) {
                std::set<std::size_t> targets;
                for (std::size_t u : rel[v])
                    targets.insert(block[u]);
                sig.push_back(npos); // separator
                sig.insert(sig.end(), targets.begin(), targets.end());
            }
            auto [it, fresh] = sig_ids.emplace(std::move(sig), sig_ids.size());
            next[v] = it->second;
        }
        std::set<std::size_t> before(block.begin(), block.end());
        if (sig_ids.size() == before.size())
            return next;
        block = std::move(next);
    }
}

} // namespace

PairSet max_bisimulation(const ParityGame& g, const ParityGame& g2)
{
    const std::size_t n = g.size(), n2 = g2.size();
    std::map<std::tuple<unsigned, int, int>, std::size_t> init_ids;
    std::vector<std::size_t> block(n + n2);
    auto init = [&](const ParityGame& h, std::size_t v) {
        int term = h.is_terminal(v) ? 1 + static_cast<int>(h.terminal_winner(v)) : 0;
        auto key = std::make_tuple(h.color[v], static_cast<int>(h.owner[v]), term);
        return init_ids.emplace(key, init_ids.size()).first->second;
    };
    std::vector<std::vector<std::size_t>> succ(n + n2);
    for (std::size_t v = 0; v < n; ++v) {
        block[v] = init(g, v);
        succ[v] = g.moves[v];
    }
    for (std::size_t v = 0; v < n2; ++v) {
        block[n + v] = init(g2, v);
        for (std::size_t u : g2.moves[v])
            succ[n + v].push_back(n + u);
    }
    auto final_block = refine(block, {succ});
    PairSet z;
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t v2 = 0; v2 < n2; ++v2)
            if (final_block[v] == final_block[n + v2])
                z.emplace(v, v2);
    return z;
}

PairSet max_bisimulation(const TransitionSystem& a, const TransitionSystem& b)
{
    if (a.relations.size() != b.relations.size())
        throw ValidationError("transition systems have different numbers of relations");
    const std::size_t n = a.size(), n2 = b.size();
    std::map<Label, std::size_t> label_ids;
    std::vector<std::size_t> block(n + n2);
    for (std::size_t v = 0; v < n; ++v)
        block[v] = label_ids.emplace(a.labels[v], label_ids.size()).first->second;
    for (std::size_t v = 0; v < n2; ++v)
        block[n + v] = label_ids.emplace(b.labels[v], label_ids.size()).first->second;
    std::vector<std::vector<std::vector<std::size_t>>> rels(a.relations.size(),
                                                            std::vector<std::vector<std::size_t>>(n + n2));
    for (std::size_t r = 0; r < a.relations.size(); ++r) {
        for (std::size_t v = 0; v < n; ++v)
            rels[r][v] = a.relations[r][v];
        for (std::size_t v = 0; v < n2; ++v)
            for (std::size_t u : b.relations[r][v])
                rels[r][n + v].push_back(n + u);
    }
    auto final_block = refine(block, rels);
    PairSet z;
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t v2 = 0; v2 < n2; ++v2)
            if (final_block[v] == final_block[n + v2])
                z.emplace(v, v2);
    return z;
}

// ---------------------------------------------------------------------------
// Brute force
// ---------------------------------------------------------------------------

Player brute_force_winner(const ParityGame& g, std::size_t from, std::size_t cap)
{
    g.check();
    if (g.size() > cap)
        throw ValidationError("game has " + std::to_string(g.size()) + " positions, cap is " + std::to_string(cap));
    std::vector<std::size_t> eve, adam;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (!g.is_terminal(v))
            (g.owner[v] == Player::Eve ? eve : adam).push_back(v);

    auto count = [&](const std::vector<std::size_t>& ps) {
        std::size_t c = 1;
        for (std::size_t v : ps)
            c *= g.moves[v].size();
        return c;
    };
    auto decode = [&](const std::vector<std::size_t>& ps, std::size_t code, std::vector<std::size_t>& choice) {
        for (std::size_t v : ps) {
            std::size_t k = g.moves[v].size();
            choice[v] = g.moves[v][code % k];
            code /= k;
        }
    };

    std::vector<std::size_t> choice(g.size(), npos);
    const std::size_t ne = count(eve), na = count(adam);
    for (std::size_t se = 0; se < ne; ++se) {
        decode(eve, se, choice);
        bool wins_all = true;
        for (std::size_t sa = 0; sa < na && wins_all; ++sa) {
            decode(adam, sa, choice);
            std::vector<std::size_t> seen_at(g.size(), npos);
            std::vector<std::size_t> play;
            std::size_t v = from;
            Player winner;
            for (;;) {
                if (g.is_terminal(v)) {
                    winner = g.terminal_winner(v);
                    break;
                }
                if (seen_at[v] != npos) {
                    unsigned least = ~0u;
                    for (std::size_t i = seen_at[v]; i < play.size(); ++i)
                        least = std::min(least, g.color[play[i]]);
                    winner = parity_owner(least);
                    break;
                }
                seen_at[v] = play.size();
                play.push_back(v);
                v = choice[v];
            }
            wins_all = winner == Player::Eve;
        }
        if (wins_all)
            return Player::Eve;
    }
    return Player::Adam;
}

} // namespace epimu
