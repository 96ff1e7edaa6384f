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

#ifndef EPIMU_FORMATS_HPP
#define EPIMU_FORMATS_HPP

#include "epimu/games.hpp"
#include "epimu/jta.hpp"
#include "epimu/worlds.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace epimu {

// Line-oriented text formats. '#' starts a comment. ParseError positions are
// line numbers.

/**
 *   agents: a,b
 *   actions a: a0,a1
 *   node <id> depth <d> label {p, p_a0} children <id,...>
 *   loop <id>
 */
LeveledStructure parse_structure(std::string_view text);
std::string write_structure(const LeveledStructure& s);

/**
 *   states s0 s1
 *   initial s0
 *   accepting s1
 *   on {p} s0 -> s1
 *   on * s1 -> s1        (every letter not listed for s1)
 */
Dfa parse_dfa(std::string_view text, const std::vector<std::string>& props);

/**
 *   props: p,q
 *   pair
 *   left
 *   <dfa lines>
 *   right
 *   <dfa lines>
 */
RecognizableRelation parse_relation(std::string_view text);

/// `pair <ref> <ref>` lines, refs being `node`, `node@3` or `node@inf`.
std::vector<std::pair<StateRef, StateRef>> parse_explicit_pairs(std::string_view text);
StateRef parse_state_ref(const std::string& s);

/**
 *   props: p
 *   state q0 color 1
 *   initial q0
 *   on q0 {p} := true
 *   on q0 * := (<>, q0) | (jdia a, q0)
 */
Jta parse_jta(std::string_view text);

/**
 *   pos <id> owner E|A color <c> moves <id,...>
 *   terminal <id> winner E|A
 *   initial <id>
 */
ParityGame parse_game(std::string_view text);
std::string write_game(const ParityGame& g);

/// `<id> <id>` lines naming positions of the first and second game.
PairSet parse_pairs(std::string_view text, const ParityGame& g, const ParityGame& g2);
std::string write_pairs(const PairSet& z, const ParityGame& g, const ParityGame& g2);

std::string read_file(const std::string& path);

} // namespace epimu

#endif
