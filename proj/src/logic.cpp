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

#include "epimu/logic.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace epimu {

namespace {

MuFormula make(MuKind k, std::string name = {}, MuFormula l = nullptr, MuFormula r = nullptr)
{
    return std::make_shared<const MuNode>(MuNode{k, std::move(name), std::move(l), std::move(r)});
}

AtlFormula make_atl(AtlKind k, std::string name = {}, std::vector<std::string> coalition = {},
                    AtlFormula l = nullptr, AtlFormula r = nullptr)
{
    std::sort(coalition.begin(), coalition.end());
    coalition.erase(std::unique(coalition.begin(), coalition.end()), coalition.end());
    return std::make_shared<const AtlNode>(
        AtlNode{k, std::move(name), std::move(coalition), std::move(l), std::move(r)});
}

} // namespace

namespace mu {
MuFormula top() { return make(MuKind::True); }
MuFormula bottom() { return make(MuKind::False); }
MuFormula prop(std::string p) { return make(MuKind::Prop, std::move(p)); }
MuFormula var(std::string x) { return make(MuKind::Var, std::move(x)); }
MuFormula neg(MuFormula f) { return make(MuKind::Not, {}, std::move(f)); }
MuFormula disj(MuFormula a, MuFormula b) { return make(MuKind::Or, {}, std::move(a), std::move(b)); }
MuFormula conj(MuFormula a, MuFormula b) { return make(MuKind::And, {}, std::move(a), std::move(b)); }
MuFormula diamond(MuFormula f) { return make(MuKind::Diamond, {}, std::move(f)); }
MuFormula box(MuFormula f) { return make(MuKind::Box, {}, std::move(f)); }
MuFormula know(std::string agent, MuFormula f) { return make(MuKind::Know, std::move(agent), std::move(f)); }
MuFormula possible(std::string agent, MuFormula f)
{
    return make(MuKind::Possible, std::move(agent), std::move(f));
}
MuFormula lfp(std::string x, MuFormula body) { return make(MuKind::Mu, std::move(x), std::move(body)); }
MuFormula gfp(std::string x, MuFormula body) { return make(MuKind::Nu, std::move(x), std::move(body)); }
} // namespace mu

namespace atl {
AtlFormula top() { return make_atl(AtlKind::True); }
AtlFormula bottom() { return make_atl(AtlKind::False); }
AtlFormula prop(std::string p) { return make_atl(AtlKind::Prop, std::move(p)); }
AtlFormula neg(AtlFormula f) { return make_atl(AtlKind::Not, {}, {}, std::move(f)); }
AtlFormula disj(AtlFormula a, AtlFormula b) { return make_atl(AtlKind::Or, {}, {}, std::move(a), std::move(b)); }
AtlFormula conj(AtlFormula a, AtlFormula b) { return make_atl(AtlKind::And, {}, {}, std::move(a), std::move(b)); }
AtlFormula next(std::vector<std::string> coalition, AtlFormula f)
{
    return make_atl(AtlKind::Next, {}, std::move(coalition), std::move(f));
}
AtlFormula until(std::vector<std::string> coalition, AtlFormula hold, AtlFormula goal)
{
    return make_atl(AtlKind::Until, {}, std::move(coalition), std::move(hold), std::move(goal));
}
AtlFormula eventually(std::vector<std::string> coalition, AtlFormula goal)
{
    return until(std::move(coalition), top(), std::move(goal));
}
} // namespace atl

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class Tok
{
    Ident,
    LParen,
    RParen,
    Tilde,
    Bar,
    Amp,
    Diamond, // <>
    Box,     // []
    Dot,
    LCoal,   // <<
    RCoal,   // >>
    Comma,
    End,
};

struct Token
{
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> lex(std::string_view s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        auto two = [&](char a, char b) { return c == a && i + 1 < s.size() && s[i + 1] == b; };
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
                ++j;
            out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
            i = j;
        } else if (two('<', '<')) {
            out.push_back({Tok::LCoal, "<<", i});
            i += 2;
        } else if (two('>', '>')) {
            out.push_back({Tok::RCoal, ">>", i});
            i += 2;
        } else if (two('<', '>')) {
            out.push_back({Tok::Diamond, "<>", i});
            i += 2;
        } else if (two('[', ']')) {
            out.push_back({Tok::Box, "[]", i});
            i += 2;
        } else {
            Tok k;
            switch (c) {
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '~': k = Tok::Tilde; break;
            case '!': k = Tok::Tilde; break;
            case '|': k = Tok::Bar; break;
            case '&': k = Tok::Amp; break;
            case '.': k = Tok::Dot; break;
            case ',': k = Tok::Comma; break;
            default: throw ParseError(std::string("unexpected character '") + c + "'", i);
            }
            out.push_back({k, std::string(1, c), i});
            ++i;
        }
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

bool is_upper_ident(const std::string& s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

bool is_prop_ident(const std::string& s)
{
    return !s.empty() && (std::islower(static_cast<unsigned char>(s[0])) || s[0] == '_') && s != "true" &&
           s != "false" && s != "mu" && s != "nu";
}

class TokenStream
{
public:
    explicit TokenStream(std::string_view text) : toks_(lex(text)) {}

    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(i_ + ahead, toks_.size() - 1)]; }
    Token take() { return toks_[std::min(i_++, toks_.size() - 1)]; }

    bool accept(Tok k)
    {
        if (peek().kind != k)
            return false;
        ++i_;
        return true;
    }

    bool accept_word(std::string_view w)
    {
        if (peek().kind != Tok::Ident || peek().text != w)
            return false;
        ++i_;
        return true;
    }

    Token expect(Tok k, const char* what)
    {
        if (peek().kind != k)
            throw ParseError(std::string("expected ") + what + ", found '" + peek().text + "'", peek().pos);
        return take();
    }

private:
    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

// ---------------------------------------------------------------------------
// Mu-calculus parser
// ---------------------------------------------------------------------------

class MuParser
{
public:
    explicit MuParser(std::string_view text) : ts_(text) {}

    MuFormula parse()
    {
        MuFormula f = formula();
        if (ts_.peek().kind != Tok::End)
            throw ParseError("trailing input '" + ts_.peek().text + "'", ts_.peek().pos);
        return f;
    }

private:
    MuFormula formula()
    {
        if (auto b = binder())
            return b;
        MuFormula f = conjunction();
        while (ts_.accept(Tok::Bar)) {
            MuFormula g = binder();
            f = mu::disj(f, g ? g : conjunction());
        }
        return f;
    }

    MuFormula conjunction()
    {
        MuFormula f = unary();
        while (ts_.accept(Tok::Amp))
            f = mu::conj(f, unary());
        return f;
    }

    MuFormula binder()
    {
        const Token& t = ts_.peek();
        if (t.kind != Tok::Ident || (t.text != "mu" && t.text != "nu"))
            return nullptr;
        bool least = ts_.take().text == "mu";
        Token v = ts_.expect(Tok::Ident, "variable");
        if (!is_upper_ident(v.text) || v.text == "K" || v.text == "P")
            throw ParseError("binder variable must start with an upper-case letter", v.pos);
        ts_.expect(Tok::Dot, "'.'");
        MuFormula body = formula();
        return least ? mu::lfp(v.text, body) : mu::gfp(v.text, body);
    }

    MuFormula unary()
    {
        if (auto b = binder())
            return b;
        const Token& t = ts_.peek();
        switch (t.kind) {
        case Tok::Tilde: ts_.take(); return mu::neg(unary());
        case Tok::Diamond: ts_.take(); return mu::diamond(unary());
        case Tok::Box: ts_.take(); return mu::box(unary());
        case Tok::LParen: {
            ts_.take();
            MuFormula f = formula();
            ts_.expect(Tok::RParen, "')'");
            return f;
        }
        case Tok::Ident: break;
        default: throw ParseError("unexpected '" + t.text + "'", t.pos);
        }
        Token id = ts_.take();
        if (id.text == "true")
            return mu::top();
        if (id.text == "false")
            return mu::bottom();
        if (id.text == "K" || id.text == "P") {
            Token agent = ts_.expect(Tok::Ident, "agent name");
            MuFormula body = unary();
            return id.text == "K" ? mu::know(agent.text, body) : mu::possible(agent.text, body);
        }
        if (is_upper_ident(id.text))
            return mu::var(id.text);
        if (is_prop_ident(id.text))
            return mu::prop(id.text);
        throw ParseError("unexpected identifier '" + id.text + "'", id.pos);
    }

    TokenStream ts_;
};

// ---------------------------------------------------------------------------
// ATL parser
// ---------------------------------------------------------------------------

class AtlParser
{
public:
    explicit AtlParser(std::string_view text) : ts_(text) {}

    AtlFormula parse()
    {
        AtlFormula f = formula();
        if (ts_.peek().kind != Tok::End)
            throw ParseError("trailing input '" + ts_.peek().text + "'", ts_.peek().pos);
        return f;
    }

private:
    AtlFormula formula()
    {
        AtlFormula f = conjunction();
        while (ts_.accept(Tok::Bar))
            f = atl::disj(f, conjunction());
        return f;
    }

    AtlFormula conjunction()
    {
        AtlFormula f = unary();
        while (ts_.accept(Tok::Amp))
            f = atl::conj(f, unary());
        return f;
    }

    AtlFormula unary()
    {
        const Token& t = ts_.peek();
        switch (t.kind) {
        case Tok::Tilde: ts_.take(); return atl::neg(unary());
        case Tok::LCoal: return coalition_formula();
        case Tok::LParen: {
            ts_.take();
            AtlFormula f = formula();
            ts_.expect(Tok::RParen, "')'");
            return f;
        }
        case Tok::Ident: break;
        default: throw ParseError("unexpected '" + t.text + "'", t.pos);
        }
        Token id = ts_.take();
        if (id.text == "true")
            return atl::top();
        if (id.text == "false")
            return atl::bottom();
        if (is_prop_ident(id.text))
            return atl::prop(id.text);
        throw ParseError("unexpected identifier '" + id.text + "'", id.pos);
    }

    AtlFormula coalition_formula()
    {
        ts_.expect(Tok::LCoal, "'<<'");
        std::vector<std::string> agents;
        if (ts_.peek().kind != Tok::RCoal) {
            agents.push_back(ts_.expect(Tok::Ident, "agent name").text);
            while (ts_.accept(Tok::Comma))
                agents.push_back(ts_.expect(Tok::Ident, "agent name").text);
        }
        ts_.expect(Tok::RCoal, "'>>'");
        if (ts_.accept_word("X"))
            return atl::next(agents, unary());
        if (ts_.accept_word("F"))
            return atl::eventually(agents, unary());
        AtlFormula hold = unary();
        if (!ts_.accept_word("U"))
            throw ParseError("expected X, F or U after coalition", ts_.peek().pos);
        return atl::until(agents, hold, unary());
    }

    TokenStream ts_;
};

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

void print(std::ostream& os, const MuFormula& f, bool top_level)
{
    switch (f->kind) {
    case MuKind::True: os << "true"; break;
    case MuKind::False: os << "false"; break;
    case MuKind::Prop:
    case MuKind::Var: os << f->name; break;
    case MuKind::Not: os << '~'; print(os, f->left, false); break;
    case MuKind::Or:
    case MuKind::And:
        os << '(';
        print(os, f->left, false);
        os << (f->kind == MuKind::Or ? " | " : " & ");
        print(os, f->right, false);
        os << ')';
        break;
    case MuKind::Diamond: os << "<>"; print(os, f->left, false); break;
    case MuKind::Box: os << "[]"; print(os, f->left, false); break;
    case MuKind::Know: os << "K " << f->name << ' '; print(os, f->left, false); break;
    case MuKind::Possible: os << "P " << f->name << ' '; print(os, f->left, false); break;
    case MuKind::Mu:
    case MuKind::Nu:
        if (!top_level)
            os << '(';
        os << (f->kind == MuKind::Mu ? "mu " : "nu ") << f->name << ". ";
        print(os, f->left, true);
        if (!top_level)
            os << ')';
        break;
    }
}

void print(std::ostream& os, const AtlFormula& f)
{
    auto coalition = [&] {
        os << "<<";
        for (std::size_t i = 0; i < f->coalition.size(); ++i)
            os << (i ? "," : "") << f->coalition[i];
        os << ">> ";
    };
    switch (f->kind) {
    case AtlKind::True: os << "true"; break;
    case AtlKind::False: os << "false"; break;
    case AtlKind::Prop: os << f->name; break;
    case AtlKind::Not: os << '~'; print(os, f->left); break;
    case AtlKind::Or:
    case AtlKind::And:
        os << '(';
        print(os, f->left);
        os << (f->kind == AtlKind::Or ? " | " : " & ");
        print(os, f->right);
        os << ')';
        break;
    case AtlKind::Next:
        os << '(';
        coalition();
        os << "X ";
        print(os, f->left);
        os << ')';
        break;
    case AtlKind::Until:
        os << '(';
        coalition();
        if (f->left->kind == AtlKind::True) {
            os << "F ";
        } else {
            print(os, f->left);
            os << " U ";
        }
        print(os, f->right);
        os << ')';
        break;
    }
}

template <class Fn>
void walk(const MuFormula& f, Fn&& fn)
{
    fn(f);
    if (f->left)
        walk(f->left, fn);
    if (f->right)
        walk(f->right, fn);
}

bool is_binder(const MuFormula& f) { return f->kind == MuKind::Mu || f->kind == MuKind::Nu; }

bool is_modality(MuKind k)
{
    return k == MuKind::Diamond || k == MuKind::Box || k == MuKind::Know || k == MuKind::Possible;
}

MuFormula rebuild(const MuFormula& f, MuFormula l, MuFormula r)
{
    if (l == f->left && r == f->right)
        return f;
    return make(f->kind, f->name, std::move(l), std::move(r));
}

void collect_free(const MuFormula& f, std::set<std::string>& bound, std::set<std::string>& out)
{
    if (f->kind == MuKind::Var) {
        if (!bound.count(f->name))
            out.insert(f->name);
        return;
    }
    if (is_binder(f)) {
        bool fresh = bound.insert(f->name).second;
        collect_free(f->left, bound, out);
        if (fresh)
            bound.erase(f->name);
        return;
    }
    if (f->left)
        collect_free(f->left, bound, out);
    if (f->right)
        collect_free(f->right, bound, out);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used)
{
    std::string stem = base;
    for (int n = 1;; ++n) {
        std::string cand = stem + "_" + std::to_string(n);
        if (!used.count(cand))
            return cand;
    }
}

MuFormula rename_rec(const MuFormula& f, std::map<std::string, std::string>& env, std::set<std::string>& used)
{
    switch (f->kind) {
    case MuKind::Var: {
        auto it = env.find(f->name);
        if (it == env.end() || it->second == f->name)
            return f;
        return mu::var(it->second);
    }
    case MuKind::Mu:
    case MuKind::Nu: {
        std::string name = used.count(f->name) ? fresh_name(f->name, used) : f->name;
        used.insert(name);
        auto saved = env.find(f->name) == env.end() ? std::optional<std::string>() : env[f->name];
        env[f->name] = name;
        MuFormula body = rename_rec(f->left, env, used);
        if (saved)
            env[f->name] = *saved;
        else
            env.erase(f->name);
        if (name == f->name && body == f->left)
            return f;
        return make(f->kind, name, body);
    }
    default: {
        MuFormula l = f->left ? rename_rec(f->left, env, used) : nullptr;
        MuFormula r = f->right ? rename_rec(f->right, env, used) : nullptr;
        return rebuild(f, l, r);
    }
    }
}

bool alpha_eq(const MuFormula& a, const MuFormula& b, std::map<std::string, std::string>& ab,
              std::map<std::string, std::string>& ba)
{
    if (a->kind != b->kind)
        return false;
    switch (a->kind) {
    case MuKind::True:
    case MuKind::False: return true;
    case MuKind::Prop: return a->name == b->name;
    case MuKind::Var: {
        auto ia = ab.find(a->name);
        auto ib = ba.find(b->name);
        if (ia == ab.end() && ib == ba.end())
            return a->name == b->name;
        return ia != ab.end() && ib != ba.end() && ia->second == b->name && ib->second == a->name;
    }
    case MuKind::Mu:
    case MuKind::Nu: {
        auto sa = ab;
        auto sb = ba;
        ab[a->name] = b->name;
        ba[b->name] = a->name;
        bool r = alpha_eq(a->left, b->left, ab, ba);
        ab = std::move(sa);
        ba = std::move(sb);
        return r;
    }
    case MuKind::Know:
    case MuKind::Possible:
        return a->name == b->name && alpha_eq(a->left, b->left, ab, ba);
    default:
        if (!alpha_eq(a->left, b->left, ab, ba))
            return false;
        return !a->right || alpha_eq(a->right, b->right, ab, ba);
    }
}

void positivity_rec(const MuFormula& f, bool negated, std::map<std::string, bool>& binder_polarity)
{
    switch (f->kind) {
    case MuKind::Var: {
        auto it = binder_polarity.find(f->name);
        if (it != binder_polarity.end() && it->second != negated)
            throw PositivityError(f->name);
        return;
    }
    case MuKind::Not: positivity_rec(f->left, !negated, binder_polarity); return;
    case MuKind::Mu:
    case MuKind::Nu: {
        auto saved = binder_polarity;
        binder_polarity[f->name] = negated;
        positivity_rec(f->left, negated, binder_polarity);
        binder_polarity = std::move(saved);
        return;
    }
    default:
        if (f->left)
            positivity_rec(f->left, negated, binder_polarity);
        if (f->right)
            positivity_rec(f->right, negated, binder_polarity);
    }
}

MuFormula nnf_rec(const MuFormula& f, bool negated, std::map<std::string, bool>& flipped)
{
    switch (f->kind) {
    case MuKind::True: return negated ? mu::bottom() : f;
    case MuKind::False: return negated ? mu::top() : f;
    case MuKind::Prop: return negated ? mu::neg(f) : f;
    case MuKind::Var: {
        auto it = flipped.find(f->name);
        bool flip = it != flipped.end() && it->second;
        return (negated != flip) ? mu::neg(mu::var(f->name)) : mu::var(f->name);
    }
    case MuKind::Not: return nnf_rec(f->left, !negated, flipped);
    case MuKind::Or:
    case MuKind::And: {
        MuFormula l = nnf_rec(f->left, negated, flipped);
        MuFormula r = nnf_rec(f->right, negated, flipped);
        bool disjunctive = (f->kind == MuKind::Or) != negated;
        return disjunctive ? mu::disj(l, r) : mu::conj(l, r);
    }
    case MuKind::Diamond:
    case MuKind::Box: {
        MuFormula g = nnf_rec(f->left, negated, flipped);
        bool dia = (f->kind == MuKind::Diamond) != negated;
        return dia ? mu::diamond(g) : mu::box(g);
    }
    case MuKind::Know:
    case MuKind::Possible: {
        MuFormula g = nnf_rec(f->left, negated, flipped);
        bool knows = (f->kind == MuKind::Know) != negated;
        return knows ? mu::know(f->name, g) : mu::possible(f->name, g);
    }
    case MuKind::Mu:
    case MuKind::Nu: {
        auto saved = flipped.find(f->name) == flipped.end() ? std::optional<bool>() : flipped[f->name];
        flipped[f->name] = negated;
        MuFormula body = nnf_rec(f->left, negated, flipped);
        if (saved)
            flipped[f->name] = *saved;
        else
            flipped.erase(f->name);
        bool least = (f->kind == MuKind::Mu) != negated;
        return least ? mu::lfp(f->name, body) : mu::gfp(f->name, body);
    }
    }
    return f;
}

void colors_rec(const MuFormula& f, std::optional<unsigned> enclosing, ColorAssignment& out)
{
    if (is_binder(f)) {
        unsigned parity = f->kind == MuKind::Mu ? 1u : 0u;
        unsigned c = enclosing ? *enclosing : parity;
        if (c % 2 != parity)
            ++c;
        out[f->name] = c;
        colors_rec(f->left, c, out);
        return;
    }
    if (f->left)
        colors_rec(f->left, enclosing, out);
    if (f->right)
        colors_rec(f->right, enclosing, out);
}

void guarded_rec(const MuFormula& f, std::map<std::string, bool>& guarded, std::set<std::string>& bad)
{
    if (f->kind == MuKind::Var) {
        auto it = guarded.find(f->name);
        if (it != guarded.end() && !it->second)
            bad.insert(f->name);
        return;
    }
    if (is_binder(f)) {
        auto saved = guarded;
        guarded[f->name] = false;
        guarded_rec(f->left, guarded, bad);
        guarded = std::move(saved);
        return;
    }
    if (is_modality(f->kind)) {
        auto saved = guarded;
        for (auto& [_, g] : guarded)
            g = true;
        guarded_rec(f->left, guarded, bad);
        guarded = std::move(saved);
        return;
    }
    if (f->left)
        guarded_rec(f->left, guarded, bad);
    if (f->right)
        guarded_rec(f->right, guarded, bad);
}

MuFormula subst_rec(const MuFormula& f, const std::string& x, const MuFormula& repl,
                    const std::set<std::string>& repl_free, std::set<std::string>& used)
{
    switch (f->kind) {
    case MuKind::Var: return f->name == x ? repl : f;
    case MuKind::Mu:
    case MuKind::Nu: {
        if (f->name == x)
            return f;
        if (repl_free.count(f->name)) {
            std::string name = fresh_name(f->name, used);
            used.insert(name);
            MuFormula renamed = subst_rec(f->left, f->name, mu::var(name), {name}, used);
            return make(f->kind, name, subst_rec(renamed, x, repl, repl_free, used));
        }
        return rebuild(f, subst_rec(f->left, x, repl, repl_free, used), nullptr);
    }
    default: {
        MuFormula l = f->left ? subst_rec(f->left, x, repl, repl_free, used) : nullptr;
        MuFormula r = f->right ? subst_rec(f->right, x, repl, repl_free, used) : nullptr;
        return rebuild(f, l, r);
    }
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Public API
// ---------------------------------------------------------------------------

MuFormula parse_mu_formula(std::string_view text)
{
    MuFormula f = MuParser(text).parse();
    check_positivity(f);
    return alpha_rename(f);
}

AtlFormula parse_atl_formula(std::string_view text) { return AtlParser(text).parse(); }

std::string to_string(const MuFormula& f)
{
    std::ostringstream os;
    print(os, f, true);
    return os.str();
}

std::string to_string(const AtlFormula& f)
{
    std::ostringstream os;
    print(os, f);
    return os.str();
}

std::size_t formula_size(const MuFormula& f)
{
    std::size_t n = 0;
    walk(f, [&](const MuFormula&) { ++n; });
    return n;
}

std::set<std::string> free_variables(const MuFormula& f)
{
    std::set<std::string> bound, out;
    collect_free(f, bound, out);
    return out;
}

std::set<std::string> propositions(const MuFormula& f)
{
    std::set<std::string> out;
    walk(f, [&](const MuFormula& g) {
        if (g->kind == MuKind::Prop)
            out.insert(g->name);
    });
    return out;
}

std::set<std::string> agents(const MuFormula& f)
{
    std::set<std::string> out;
    walk(f, [&](const MuFormula& g) {
        if (g->kind == MuKind::Know || g->kind == MuKind::Possible)
            out.insert(g->name);
    });
    return out;
}

MuFormula alpha_rename(const MuFormula& f)
{
    std::set<std::string> used = free_variables(f);
    std::map<std::string, std::string> env;
    return rename_rec(f, env, used);
}

bool alpha_equivalent(const MuFormula& a, const MuFormula& b)
{
    std::map<std::string, std::string> ab, ba;
    return alpha_eq(a, b, ab, ba);
}

void check_positivity(const MuFormula& f)
{
    std::map<std::string, bool> polarity;
    positivity_rec(f, false, polarity);
}

MuFormula to_negation_normal_form(const MuFormula& f)
{
    std::map<std::string, bool> flipped;
    return nnf_rec(f, false, flipped);
}

bool is_negation_normal_form(const MuFormula& f)
{
    bool ok = true;
    walk(f, [&](const MuFormula& g) {
        if (g->kind == MuKind::Not && g->left->kind != MuKind::Prop && g->left->kind != MuKind::Var)
            ok = false;
    });
    return ok;
}

MuFormula substitute(const MuFormula& f, const std::string& x, const MuFormula& replacement)
{
    std::set<std::string> used;
    walk(f, [&](const MuFormula& g) {
        if (g->kind == MuKind::Var || is_binder(g))
            used.insert(g->name);
    });
    walk(replacement, [&](const MuFormula& g) {
        if (g->kind == MuKind::Var || is_binder(g))
            used.insert(g->name);
    });
    return alpha_rename(subst_rec(f, x, replacement, free_variables(replacement), used));
}

ColorAssignment assign_colors(const MuFormula& nnf)
{
    ColorAssignment out;
    colors_rec(nnf, std::nullopt, out);
    return out;
}

std::vector<std::string> check_guarded(const MuFormula& nnf)
{
    std::map<std::string, bool> guarded;
    std::set<std::string> bad;
    guarded_rec(nnf, guarded, bad);
    return {bad.begin(), bad.end()};
}

std::set<std::string> propositions(const AtlFormula& f)
{
    std::set<std::string> out;
    std::function<void(const AtlFormula&)> rec = [&](const AtlFormula& g) {
        if (g->kind == AtlKind::Prop)
            out.insert(g->name);
        if (g->left)
            rec(g->left);
        if (g->right)
            rec(g->right);
    };
    rec(f);
    return out;
}

std::set<std::string> agents(const AtlFormula& f)
{
    std::set<std::string> out;
    std::function<void(const AtlFormula&)> rec = [&](const AtlFormula& g) {
        out.insert(g->coalition.begin(), g->coalition.end());
        if (g->left)
            rec(g->left);
        if (g->right)
            rec(g->right);
    };
    rec(f);
    return out;
}

} // namespace epimu
