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

#include "epimu/xlate.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace epimu {

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

thread_local std::size_t g_max_rounds = 0;

class Evaluator
{
public:
    explicit Evaluator(const QuotientSystem& q) : q_(q), n_(q.size()) {}

    StateSet eval(const MuFormula& f, Valuation& v)
    {
        const auto& fv = free_of(f);
        std::vector<StateSet> key;
        key.reserve(fv.size());
        for (const auto& x : fv) {
            auto it = v.find(x);
            if (it == v.end())
                throw ValidationError("no value for free variable " + x);
            key.push_back(it->second);
        }
        auto mk = std::make_pair(f.get(), std::move(key));
        auto hit = memo_.find(mk);
        if (hit != memo_.end())
            return hit->second;
        StateSet r = compute(f, v);
        memo_.emplace(std::move(mk), r);
        return r;
    }

private:
    const std::set<std::string>& free_of(const MuFormula& f)
    {
        auto it = free_.find(f.get());
        if (it != free_.end())
            return it->second;
        return free_.emplace(f.get(), free_variables(f)).first->second;
    }

    std::size_t agent(const std::string& a) const
    {
        std::size_t i = q_.agent_index(a);
        if (i == npos)
            throw ValidationError("no relation for agent " + a);
        return i;
    }

    StateSet compute(const MuFormula& f, Valuation& v)
    {
        StateSet r(n_);
        switch (f->kind) {
        case MuKind::True: r.set(); return r;
        case MuKind::False: return r;
        case MuKind::Prop:
            for (std::size_t s = 0; s < n_; ++s)
                if (q_.labels[s].count(f->name))
                    r.set(s);
            return r;
        case MuKind::Var: return v.at(f->name);
        case MuKind::Not: {
            r = eval(f->left, v);
            r.flip();
            return r;
        }
        case MuKind::Or: return eval(f->left, v) | eval(f->right, v);
        case MuKind::And: return eval(f->left, v) & eval(f->right, v);
        case MuKind::Diamond:
        case MuKind::Box: {
            StateSet a = eval(f->left, v);
            bool exists = f->kind == MuKind::Diamond;
            for (std::size_t s = 0; s < n_; ++s)
                if (quantify(q_.children[s], a, exists))
                    r.set(s);
            return r;
        }
        case MuKind::Know:
        case MuKind::Possible: {
            StateSet a = eval(f->left, v);
            const auto& rel = q_.jumps[agent(f->name)];
            bool exists = f->kind == MuKind::Possible;
            for (std::size_t s = 0; s < n_; ++s)
                if (quantify(rel[s], a, exists))
                    r.set(s);
            return r;
        }
        case MuKind::Mu:
        case MuKind::Nu: {
            StateSet cur(n_);
            if (f->kind == MuKind::Nu)
                cur.set();
            auto saved = v.find(f->name) == v.end() ? std::optional<StateSet>() : v[f->name];
            std::size_t rounds = 0;
            for (;;) {
                ++rounds;
                v[f->name] = cur;
                StateSet next = eval(f->left, v);
                if (next == cur)
                    break;
                cur = std::move(next);
            }
            g_max_rounds = std::max(g_max_rounds, rounds);
            if (saved)
                v[f->name] = *saved;
            else
                v.erase(f->name);
            return cur;
        }
        }
        return r;
    }

    static bool quantify(const std::vector<std::size_t>& succ, const StateSet& a, bool exists)
    {
        for (std::size_t y : succ)
            if (a.test(y) == exists)
                return exists;
        return !exists;
    }

    const QuotientSystem& q_;
    std::size_t n_;
    std::map<const MuNode*, std::set<std::string>> free_;
    std::map<std::pair<const MuNode*, std::vector<StateSet>>, StateSet> memo_;
};

} // namespace

StateSet eval_mu(const MuFormula& f, const QuotientSystem& q, const Valuation& v)
{
    g_max_rounds = 0;
    Valuation val = v;
    for (auto& [x, s] : val)
        if (s.size() != q.size())
            throw ValidationError("valuation of " + x + " has the wrong size");
    return Evaluator(q).eval(f, val);
}

std::size_t last_max_kleene_rounds() { return g_max_rounds; }

// ---------------------------------------------------------------------------
// Formula to automaton
// ---------------------------------------------------------------------------

Jta formula_to_jta(const MuFormula& input)
{
    const MuFormula f = alpha_rename(to_negation_normal_form(input));
    auto fv = free_variables(f);
    if (!fv.empty())
        throw ValidationError("formula is not a sentence: " + *fv.begin() + " is free");
    auto bad = check_guarded(f);
    if (!bad.empty())
        throw ValidationError("formula is not guarded: " + bad.front() + " occurs outside any modality");

    const ColorAssignment colors = assign_colors(f);
    unsigned neutral = 0;
    for (const auto& [_, c] : colors)
        neutral = std::max(neutral, c + 1);

    std::map<std::string, MuFormula> binders;
    std::function<void(const MuFormula&)> collect = [&](const MuFormula& g) {
        if (g->kind == MuKind::Mu || g->kind == MuKind::Nu)
            binders[g->name] = g;
        if (g->left)
            collect(g->left);
        if (g->right)
            collect(g->right);
    };
    collect(f);

    Jta a;
    auto props = propositions(f);
    a.props.assign(props.begin(), props.end());
    if (a.props.size() > 16)
        throw ValidationError("too many propositions for an explicit alphabet");

    std::vector<std::pair<MuFormula, unsigned>> state_of;
    std::map<std::pair<const MuNode*, unsigned>, std::size_t> index;
    auto state = [&](const MuFormula& arg, unsigned c) {
        auto [it, fresh] = index.emplace(std::make_pair(arg.get(), c), state_of.size());
        if (fresh) {
            state_of.emplace_back(arg, c);
            a.state_names.push_back("q" + std::to_string(it->second));
            a.colors.push_back(c);
        }
        return it->second;
    };

    std::function<BoolPos(const MuFormula&, unsigned, std::size_t)> tr = [&](const MuFormula& g, unsigned acc,
                                                                               std::size_t mask) -> BoolPos {
        auto holds = [&](const std::string& p) {
            auto it = std::find(a.props.begin(), a.props.end(), p);
            return (mask >> (it - a.props.begin())) & 1u;
        };
        switch (g->kind) {
        case MuKind::True: return bp::top();
        case MuKind::False: return bp::bottom();
        case MuKind::Prop: return holds(g->name) ? bp::top() : bp::bottom();
        case MuKind::Not:
            if (g->left->kind != MuKind::Prop)
                throw ValidationError("negation above a non-proposition after normalisation");
            return holds(g->left->name) ? bp::bottom() : bp::top();
        case MuKind::Or: return bp::disj(tr(g->left, acc, mask), tr(g->right, acc, mask));
        case MuKind::And: return bp::conj(tr(g->left, acc, mask), tr(g->right, acc, mask));
        case MuKind::Mu:
        case MuKind::Nu: return tr(g->left, std::min(acc, colors.at(g->name)), mask);
        case MuKind::Var: {
            const MuFormula& b = binders.at(g->name);
            return tr(b->left, std::min(acc, colors.at(g->name)), mask);
        }
        case MuKind::Diamond: return bp::atom(Dir::Dia, state(g->left, acc));
        case MuKind::Box: return bp::atom(Dir::Box, state(g->left, acc));
        case MuKind::Know: return bp::atom(Dir::JumpBox, state(g->left, acc), g->name);
        case MuKind::Possible: return bp::atom(Dir::JumpDia, state(g->left, acc), g->name);
        }
        return bp::bottom();
    };

    a.initial = state(f, neutral);
    for (std::size_t s = 0; s < state_of.size(); ++s) {
        // Copied: tr may append to state_of.
        const MuFormula arg = state_of[s].first;
        std::vector<BoolPos> row;
        for (std::size_t m = 0; m < a.num_letters(); ++m)
            row.push_back(tr(arg, neutral, m));
        a.delta.push_back(std::move(row));
    }
    return a;
}

// ---------------------------------------------------------------------------
// Automaton to equations
// ---------------------------------------------------------------------------

namespace {

MuFormula mk_or(const MuFormula& a, const MuFormula& b)
{
    if (a->kind == MuKind::True || b->kind == MuKind::False)
        return a;
    if (b->kind == MuKind::True || a->kind == MuKind::False)
        return b;
    return mu::disj(a, b);
}

MuFormula mk_and(const MuFormula& a, const MuFormula& b)
{
    if (a->kind == MuKind::False || b->kind == MuKind::True)
        return a;
    if (b->kind == MuKind::False || a->kind == MuKind::True)
        return b;
    return mu::conj(a, b);
}

std::string var_name(const Jta& a, std::size_t q) { return "X_" + a.state_names[q]; }

MuFormula translate(const BoolPos& b, const Jta& a)
{
    switch (b->kind) {
    case BoolKind::True: return mu::top();
    case BoolKind::False: return mu::bottom();
    case BoolKind::Or: return mk_or(translate(b->left, a), translate(b->right, a));
    case BoolKind::And: return mk_and(translate(b->left, a), translate(b->right, a));
    case BoolKind::Atom: {
        MuFormula x = mu::var(var_name(a, b->state));
        switch (b->dir) {
        case Dir::Dia: return mu::diamond(x);
        case Dir::Box: return mu::box(x);
        case Dir::JumpDia: return mu::possible(b->agent, x);
        case Dir::JumpBox: return mu::know(b->agent, x);
        }
    }
    }
    return mu::bottom();
}

} // namespace

EquationSystem jta_to_equations(const Jta& a, const std::optional<std::vector<Label>>& labels)
{
    a.check();
    std::vector<std::size_t> letters;
    if (labels) {
        std::set<std::size_t> ms;
        for (const auto& l : *labels)
            ms.insert(a.letter(l));
        letters.assign(ms.begin(), ms.end());
    } else {
        letters.resize(a.num_letters());
        std::iota(letters.begin(), letters.end(), 0);
    }

    std::vector<std::size_t> order(a.num_states());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a.colors[x] < a.colors[y]; });

    EquationSystem e;
    for (std::size_t q : order) {
        MuFormula rhs = mu::bottom();
        // A transition shared by every letter needs no letter guard.
        if (letters.size() == a.num_letters()) {
            const std::string first = to_string(translate(a.delta[q][letters.front()], a));
            bool uniform = std::all_of(letters.begin(), letters.end(), [&](std::size_t m) {
                return to_string(translate(a.delta[q][m], a)) == first;
            });
            if (uniform) {
                e.equations.push_back({var_name(a, q), a.colors[q] % 2 == 1, translate(a.delta[q][0], a)});
                continue;
            }
        }
        for (std::size_t m : letters) {
            MuFormula t = translate(a.delta[q][m], a);
            if (t->kind == MuKind::False)
                continue;
            MuFormula chi = mu::top();
            for (std::size_t b = 0; b < a.props.size(); ++b) {
                MuFormula lit = mu::prop(a.props[b]);
                chi = mk_and(chi, (m >> b) & 1u ? lit : mu::neg(lit));
            }
            rhs = mk_or(rhs, mk_and(chi, t));
        }
        e.equations.push_back({var_name(a, q), a.colors[q] % 2 == 1, rhs});
    }
    e.entry = var_name(a, a.initial);
    return e;
}

StateSet eval_equations(const EquationSystem& e, const QuotientSystem& q)
{
    const std::size_t n = e.equations.size();
    Valuation v;
    // Solves equations i.. given values of the outer ones already in v.
    std::function<void(std::size_t)> solve_from = [&](std::size_t i) {
        if (i == n)
            return;
        const Equation& eq = e.equations[i];
        StateSet cur(q.size());
        if (!eq.least)
            cur.set();
        for (;;) {
            v[eq.var] = cur;
            solve_from(i + 1);
            StateSet next = eval_mu(eq.rhs, q, v);
            if (next == cur)
                break;
            cur = std::move(next);
        }
        v[eq.var] = cur;
        solve_from(i + 1);
    };
    solve_from(0);
    auto it = v.find(e.entry);
    if (it == v.end())
        throw ValidationError("entry variable " + e.entry + " has no equation");
    return it->second;
}

std::size_t flatten_cap_from_env()
{
    if (const char* s = std::getenv("KMU_FLATTEN_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && v > 0)
            return static_cast<std::size_t>(v);
    }
    return 100000;
}

MuFormula flatten(const EquationSystem& e, std::size_t size_cap)
{
    const std::size_t n = e.equations.size();
    auto guard = [&](const MuFormula& f) {
        std::size_t s = formula_size(f);
        if (s > size_cap)
            throw FlattenCapExceeded("flattened formula exceeds " + std::to_string(size_cap) + " nodes (" +
                                     std::to_string(s) + ")");
        return f;
    };
    std::vector<MuFormula> rhs(n), closed(n);
    for (std::size_t i = 0; i < n; ++i)
        rhs[i] = e.equations[i].rhs;
    for (std::size_t i = n; i-- > 0;) {
        const auto& eq = e.equations[i];
        closed[i] = eq.least ? mu::lfp(eq.var, rhs[i]) : mu::gfp(eq.var, rhs[i]);
        for (std::size_t j = 0; j < i; ++j)
            rhs[j] = guard(substitute(rhs[j], eq.var, closed[i]));
    }
    std::vector<MuFormula> fin(n);
    for (std::size_t i = 0; i < n; ++i) {
        MuFormula f = closed[i];
        for (std::size_t j = 0; j < i; ++j)
            f = guard(substitute(f, e.equations[j].var, fin[j]));
        fin[i] = f;
        if (e.equations[i].var == e.entry)
            return alpha_rename(f);
    }
    throw ValidationError("entry variable " + e.entry + " has no equation");
}

std::string to_string(const EquationSystem& e)
{
    std::ostringstream os;
    os << "let ";
    for (const auto& eq : e.equations)
        os << (eq.least ? "mu " : "nu ") << eq.var << " = " << to_string(eq.rhs) << "; ";
    os << "in " << e.entry;
    return os.str();
}

} // namespace epimu
