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

#ifndef EPIMU_LOGIC_HPP
#define EPIMU_LOGIC_HPP

#include "epimu/common.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace epimu {

// ---------------------------------------------------------------------------
// Epistemic mu-calculus
// ---------------------------------------------------------------------------

enum class MuKind
{
    True,
    False,
    Prop,
    Var,
    Not,
    Or,
    And,
    Diamond,
    Box,
    Know,     // K_i
    Possible, // P_i, dual of K_i
    Mu,
    Nu,
};

struct MuNode;

/// Immutable, shareable formula handle.
using MuFormula = std::shared_ptr<const MuNode>;

struct MuNode
{
    MuKind kind;
    /// Proposition (Prop), variable (Var, Mu, Nu) or agent (Know, Possible).
    std::string name;
    /// Operand of unary nodes and binders, left operand of Or/And.
    MuFormula left;
    MuFormula right;
};

namespace mu {
MuFormula top();
MuFormula bottom();
MuFormula prop(std::string p);
MuFormula var(std::string x);
MuFormula neg(MuFormula f);
MuFormula disj(MuFormula a, MuFormula b);
MuFormula conj(MuFormula a, MuFormula b);
MuFormula diamond(MuFormula f);
MuFormula box(MuFormula f);
MuFormula know(std::string agent, MuFormula f);
MuFormula possible(std::string agent, MuFormula f);
MuFormula lfp(std::string x, MuFormula body);
MuFormula gfp(std::string x, MuFormula body);
} // namespace mu

/// Variable named in a positivity violation.
class PositivityError : public ValidationError
{
public:
    explicit PositivityError(std::string variable)
        : ValidationError("variable " + variable + " occurs negatively under its binder"),
          variable_(std::move(variable))
    {
    }

    const std::string& variable() const noexcept { return variable_; }

private:
    std::string variable_;
};

/**
 * Parses the ASCII concrete syntax:
 *
 *   true false p ~f (f | f) (f & f) <>f []f K a f P a f mu X. f nu X. f
 *
 * Propositions start with a lower-case letter, variables with an upper-case
 * letter (K and P are reserved). '&' binds tighter than '|'; binder bodies
 * extend as far to the right as possible. Bound variables are alpha-renamed so
 * that every binder introduces a distinct name, and positivity is checked.
 */
MuFormula parse_mu_formula(std::string_view text);

/// Prints a formula in the syntax accepted by parse_mu_formula.
std::string to_string(const MuFormula& f);

/// Number of syntax-tree nodes.
std::size_t formula_size(const MuFormula& f);

std::set<std::string> free_variables(const MuFormula& f);
std::set<std::string> propositions(const MuFormula& f);
std::set<std::string> agents(const MuFormula& f);

/// Renames binders so that all bound names are pairwise distinct and distinct
/// from free names. Names already unique are kept.
MuFormula alpha_rename(const MuFormula& f);

bool alpha_equivalent(const MuFormula& a, const MuFormula& b);

/// Throws PositivityError if a bound variable occurs under an odd number of
/// negations inside its binder.
void check_positivity(const MuFormula& f);

/// Negations pushed down to propositions; duals introduced as needed.
MuFormula to_negation_normal_form(const MuFormula& f);

bool is_negation_normal_form(const MuFormula& f);

/// Capture-free substitution of `replacement` for the free occurrences of `x`.
/// The result is alpha-renamed.
MuFormula substitute(const MuFormula& f, const std::string& x, const MuFormula& replacement);

/// Binder variable -> colour. Least fixpoints get odd colours, greatest
/// fixpoints even ones; enclosing binders never get a larger colour.
using ColorAssignment = std::map<std::string, unsigned>;

ColorAssignment assign_colors(const MuFormula& nnf);

/// Variables with an occurrence not beneath a modality (<>, [], K, P) inside
/// their binder. Empty means the formula is guarded.
std::vector<std::string> check_guarded(const MuFormula& nnf);

// ---------------------------------------------------------------------------
// ATL with imperfect information
// ---------------------------------------------------------------------------

enum class AtlKind
{
    True,
    False,
    Prop,
    Not,
    Or,
    And,
    Next,  // <<A>> X f
    Until, // <<A>> f U g
};

struct AtlNode;
using AtlFormula = std::shared_ptr<const AtlNode>;

struct AtlNode
{
    AtlKind kind;
    std::string name;                  // Prop only
    std::vector<std::string> coalition; // Next/Until, sorted and unique
    AtlFormula left;
    AtlFormula right;
};

namespace atl {
AtlFormula top();
AtlFormula bottom();
AtlFormula prop(std::string p);
AtlFormula neg(AtlFormula f);
AtlFormula disj(AtlFormula a, AtlFormula b);
AtlFormula conj(AtlFormula a, AtlFormula b);
AtlFormula next(std::vector<std::string> coalition, AtlFormula f);
AtlFormula until(std::vector<std::string> coalition, AtlFormula hold, AtlFormula goal);
AtlFormula eventually(std::vector<std::string> coalition, AtlFormula goal);
} // namespace atl

/// Same lexical conventions as parse_mu_formula, plus
/// `<<a,b>> X f`, `<<a>> f U g` and `<<a>> F f`.
AtlFormula parse_atl_formula(std::string_view text);

std::string to_string(const AtlFormula& f);

std::set<std::string> propositions(const AtlFormula& f);
std::set<std::string> agents(const AtlFormula& f);

} // namespace epimu

#endif
