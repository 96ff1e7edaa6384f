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

#ifndef EPIMU_XLATE_HPP
#define EPIMU_XLATE_HPP

#include "epimu/common.hpp"
#include "epimu/jta.hpp"
#include "epimu/logic.hpp"
#include "epimu/worlds.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace epimu {

/// Interpretation of free variables as sets of quotient states.
using Valuation = std::map<std::string, StateSet>;

/**
 * Fixpoint semantics on the quotient by Kleene iteration. Diamond and box
 * quantify over children, K and P over the agent's jump relation.
 */
StateSet eval_mu(const MuFormula& f, const QuotientSystem& q, const Valuation& v = {});

/// Number of Kleene rounds taken by the longest fixpoint computation of the
/// last eval_mu call on this thread (for convergence tests).
std::size_t last_max_kleene_rounds();

/**
 * Automaton with one state per (modal argument, segment colour) pair plus the
 * initial state. Throws ValidationError for formulas that are not guarded
 * sentences. The input is normalised first.
 */
Jta formula_to_jta(const MuFormula& f);

struct Equation
{
    std::string var;
    bool least = true;
    MuFormula rhs;
};

/// Hierarchical system: equations[0] is the outermost.
struct EquationSystem
{
    std::vector<Equation> equations;
    std::string entry;
};

/**
 * One equation per automaton state. When `labels` is given, only the letters
 * of those labels are expanded.
 */
EquationSystem jta_to_equations(const Jta& a, const std::optional<std::vector<Label>>& labels = std::nullopt);

StateSet eval_equations(const EquationSystem& e, const QuotientSystem& q);

class FlattenCapExceeded : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Size cap read from KMU_FLATTEN_CAP, 100000 when unset.
std::size_t flatten_cap_from_env();

/// Closed formula for the entry variable by innermost-first elimination.
MuFormula flatten(const EquationSystem& e, std::size_t size_cap = flatten_cap_from_env());

/// `let mu X = f; nu Y = g; in X`.
std::string to_string(const EquationSystem& e);

} // namespace epimu

#endif
