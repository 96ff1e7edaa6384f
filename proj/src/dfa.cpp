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

#include "epimu/dfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace epimu {

std::size_t Dfa::run(std::size_t from, const std::vector<std::size_t>& word) const
{
    std::size_t s = from;
    for (std::size_t a : word)
        s = next(s, a);
    return s;
}

void Dfa::check() const
{
    if (num_states == 0)
        throw ValidationError("automaton has no states");
    if (initial >= num_states)
        throw ValidationError("initial state out of range");
    if (accepting.size() != num_states || delta.size() != num_states * num_letters)
        throw ValidationError("transition table is not total");
    for (std::size_t t : delta)
        if (t >= num_states)
            throw ValidationError("transition to an undeclared state");
}

Dfa universal_dfa(std::size_t num_letters)
{
    Dfa d;
    d.num_letters = num_letters;
    d.num_states = 1;
    d.accepting = {true};
    d.delta.assign(num_letters, 0);
    return d;
}

Dfa empty_dfa(std::size_t num_letters)
{
    Dfa d = universal_dfa(num_letters);
    d.accepting = {false};
    return d;
}

Dfa trim(const Dfa& a)
{
    std::vector<std::size_t> renum(a.num_states, npos);
    std::vector<std::size_t> order{a.initial};
    renum[a.initial] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t c = 0; c < a.num_letters; ++c) {
            std::size_t t = a.next(order[i], c);
            if (renum[t] == npos) {
                renum[t] = order.size();
                order.push_back(t);
            }
        }
    Dfa out;
    out.num_letters = a.num_letters;
    out.num_states = order.size();
    out.initial = 0;
    out.accepting.resize(order.size());
    out.delta.resize(order.size() * a.num_letters);
    for (std::size_t i = 0; i < order.size(); ++i) {
        out.accepting[i] = a.accepting[order[i]];
        for (std::size_t c = 0; c < a.num_letters; ++c)
            out.delta[i * a.num_letters + c] = renum[a.next(order[i], c)];
    }
    return out;
}

Dfa minimize(const Dfa& input)
{
    const Dfa a = trim(input);
    const std::size_t n = a.num_states;
    const std::size_t k = a.num_letters;

    // inverse[c][t] = states s with delta(s, c) = t
    std::vector<std::vector<std::vector<std::size_t>>> inverse(k, std::vector<std::vector<std::size_t>>(n));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t c = 0; c < k; ++c)
            inverse[c][a.next(s, c)].push_back(s);

    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::size_t> block_of(n);
    {
        std::vector<std::size_t> acc, rej;
        for (std::size_t s = 0; s < n; ++s)
            (a.accepting[s] ? acc : rej).push_back(s);
        for (auto* b : {&acc, &rej})
            if (!b->empty()) {
                for (std::size_t s : *b)
                    block_of[s] = blocks.size();
                blocks.push_back(std::move(*b));
            }
    }

    std::vector<bool> in_work(blocks.size(), true);
    std::deque<std::size_t> work;
    for (std::size_t b = 0; b < blocks.size(); ++b)
        work.push_back(b);

    while (!work.empty()) {
        std::size_t splitter = work.front();
        work.pop_front();
        in_work[splitter] = false;
        const std::vector<std::size_t> members = blocks[splitter];
        for (std::size_t c = 0; c < k; ++c) {
            // Predecessors grouped by block.
            std::map<std::size_t, std::vector<std::size_t>> hit;
            for (std::size_t t : members)
                for (std::size_t s : inverse[c][t])
                    hit[block_of[s]].push_back(s);
            for (auto& [y, inside] : hit) {
                if (inside.size() == blocks[y].size())
                    continue;
                std::sort(inside.begin(), inside.end());
                std::vector<std::size_t> outside;
                std::set_difference(blocks[y].begin(), blocks[y].end(), inside.begin(), inside.end(),
                                    std::back_inserter(outside));
                std::size_t fresh = blocks.size();
                blocks[y] = std::move(inside);
                blocks.push_back(std::move(outside));
                for (std::size_t s : blocks[fresh])
                    block_of[s] = fresh;
                in_work.push_back(false);
                if (in_work[y]) {
                    in_work[fresh] = true;
                    work.push_back(fresh);
                } else {
                    std::size_t smaller = blocks[y].size() <= blocks[fresh].size() ? y : fresh;
                    in_work[smaller] = true;
                    work.push_back(smaller);
                }
            }
        }
    }

    Dfa q;
    q.num_letters = k;
    q.num_states = blocks.size();
    q.initial = block_of[a.initial];
    q.accepting.resize(blocks.size());
    q.delta.resize(blocks.size() * k);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        std::size_t rep = blocks[b].front();
        q.accepting[b] = a.accepting[rep];
        for (std::size_t c = 0; c < k; ++c)
            q.delta[b * k + c] = block_of[a.next(rep, c)];
    }
    return trim(q);
}

bool equivalent(const Dfa& a, const Dfa& b)
{
    if (a.num_letters != b.num_letters)
        return false;
    std::set<std::pair<std::size_t, std::size_t>> seen{{a.initial, b.initial}};
    std::vector<std::pair<std::size_t, std::size_t>> stack{{a.initial, b.initial}};
    while (!stack.empty()) {
        auto [s, t] = stack.back();
        stack.pop_back();
        if (a.accepting[s] != b.accepting[t])
            return false;
        for (std::size_t c = 0; c < a.num_letters; ++c) {
            std::pair<std::size_t, std::size_t> nxt{a.next(s, c), b.next(t, c)};
            if (seen.insert(nxt).second)
                stack.push_back(nxt);
        }
    }
    return true;
}

} // namespace epimu
