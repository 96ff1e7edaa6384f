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

#ifndef EPIMU_DFA_HPP
#define EPIMU_DFA_HPP

#include "epimu/common.hpp"

#include <cstdint>
#include <vector>

namespace epimu {

/**
 * Complete deterministic automaton over the letters 0..num_letters-1.
 * The transition table is stored row-major: delta[s * num_letters + a].
 */
struct Dfa
{
    std::size_t num_letters = 0;
    std::size_t num_states = 0;
    std::size_t initial = 0;
    std::vector<bool> accepting;
    std::vector<std::size_t> delta;

    std::size_t next(std::size_t s, std::size_t a) const { return delta[s * num_letters + a]; }
    std::size_t run(const std::vector<std::size_t>& word) const { return run(initial, word); }
    std::size_t run(std::size_t from, const std::vector<std::size_t>& word) const;
    bool accepts(const std::vector<std::size_t>& word) const { return accepting[run(word)]; }

    /// Throws ValidationError if the table is not total or references bad states.
    void check() const;
};

/// Automaton accepting every word.
Dfa universal_dfa(std::size_t num_letters);

/// Automaton accepting nothing (a single rejecting sink).
Dfa empty_dfa(std::size_t num_letters);

/// Removes states unreachable from the initial state.
Dfa trim(const Dfa& a);

/// Minimal complete automaton for the language of `a` (Hopcroft refinement on
/// the trimmed automaton). States are renumbered in breadth-first order.
Dfa minimize(const Dfa& a);

/// Language equality, decided on the product automaton.
bool equivalent(const Dfa& a, const Dfa& b);

} // namespace epimu

#endif
