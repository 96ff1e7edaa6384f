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

#ifndef EPIMU_EXPCEX_HPP
#define EPIMU_EXPCEX_HPP

#include "epimu/atli.hpp"
#include "epimu/games.hpp"
#include "epimu/jta.hpp"
#include "epimu/worlds.hpp"

#include "json.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace epimu {

/// w_k: k-1 written with n bits, most significant first.
std::string code_word(std::size_t k, unsigned n);

/**
 * The trees T_1..T_{2^n} (index 0 holds T_1). All share one underlying tree:
 * a root with 2^n+2 children x_k, each with a single child y_k rooting a full
 * binary block of height n whose leaves loop.
 */
std::vector<TreeArena> build_family(unsigned n);

/// T_i with the block below y_{2^n+1} taken from T_j (1-based, i != j).
TreeArena combine_t0(const std::vector<TreeArena>& family, std::size_t i, std::size_t j);

/// Text drawing of T_i, T_j and T_0.
std::string render_figure(const std::vector<TreeArena>& family, std::size_t i, std::size_t j);

enum class Classification
{
    RejectsAModel,
    AcceptsANonModel,
    Inconclusive,
};

const char* to_string(Classification c);

struct ExperimentOptions
{
    AtliOptions atl;
    unsigned max_n = 6;
    bool parallel = true;
};

struct TreeResult
{
    std::size_t index = 0; // i of T_i
    bool atl_holds = false;
    bool witness_matches = false; // synthesized strategy is a0 a0 w_i a0...
    std::vector<std::string> witness_levels;
    bool accepted = false;
    std::set<std::size_t> visit; // automaton states at y_{2^N+1}
};

struct ExperimentReport
{
    unsigned n = 0;
    std::size_t automaton_states = 0;
    std::vector<TreeResult> trees;
    std::optional<std::pair<std::size_t, std::size_t>> collision;
    bool t0_atl_holds = false;
    bool t0_ef_p = false;
    bool t0_accepted = false;
    bool z_ok = false;
    bool z_prime_ok = false;
    std::string z_detail;
    std::string z_prime_detail;
    std::size_t z_pairs = 0;
    std::size_t z_prime_pairs = 0;
    bool transfer_ok = false;   // exits reached by sigma_i are won by Eve in G0
    bool sigma0_ok = false;
    std::string sigma0_detail;
    std::size_t sigma0_exits = 0;
    Classification classification = Classification::Inconclusive;
    std::size_t rejected_index = 0;
    std::string failed_step;

    nlohmann::json to_json() const;
};

/// Runs the whole construction for the candidate automaton.
ExperimentReport run_experiment(const Jta& a, const ExperimentOptions& opts = {});

/// Relation between G0 and G^i (`prime` false) or G^j (`prime` true) grown
/// from the seed pairs v_k^q over successor pairs that match node, state and
/// formula under the block correspondence.
PairSet transfer_relation(const AcceptanceGame& g0, const AcceptanceGame& gk, unsigned n, std::size_t i,
                          std::size_t j, bool prime);

/// The game of an automaton on a family member, with every v_k^q built.
AcceptanceGame family_game(const Jta& a, const QuotientSystem& q, unsigned n);

} // namespace epimu

#endif
