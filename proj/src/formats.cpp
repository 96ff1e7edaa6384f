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

#include "epimu/formats.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace epimu {

namespace {

std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

struct Line
{
    std::size_t number;
    std::string text;
};

/// Non-empty lines with comments removed.
std::vector<Line> lines_of(std::string_view text)
{
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        ++number;
        std::string_view raw = text.substr(pos, end - pos);
        std::size_t hash = raw.find('#');
        if (hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        std::string t = trim(raw);
        if (!t.empty())
            out.push_back({number, t});
        pos = end + 1;
    }
    return out;
}

std::vector<std::string> split_list(std::string_view s, char sep = ',')
{
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t end = s.find(sep, pos);
        if (end == std::string_view::npos)
            end = s.size();
        std::string item = trim(s.substr(pos, end - pos));
        if (!item.empty())
            out.push_back(item);
        pos = end + 1;
    }
    return out;
}

std::vector<std::string> words(const std::string& s)
{
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string w;
    while (is >> w)
        out.push_back(w);
    return out;
}

bool starts_with(const std::string& s, std::string_view prefix) { return s.rfind(prefix, 0) == 0; }

/// Parses "{a, b}" at the start of s; returns the set and the rest.
std::pair<Label, std::string> take_label(const std::string& s, std::size_t line)
{
    std::string t = trim(s);
    if (t.empty() || t[0] != '{')
        throw ParseError("expected a label set '{...}'", line);
    std::size_t close = t.find('}');
    if (close == std::string::npos)
        throw ParseError("unterminated label set", line);
    auto items = split_list(std::string_view(t).substr(1, close - 1));
    return {Label(items.begin(), items.end()), trim(t.substr(close + 1))};
}

std::size_t parse_number(const std::string& s, std::size_t line)
{
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("expected a number, found '" + s + "'", line);
    return std::stoul(s);
}

std::string join(const std::vector<std::string>& xs, const std::string& sep)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i)
        out += (i ? sep : "") + xs[i];
    return out;
}

std::string label_text(const Label& l)
{
    return "{" + join(std::vector<std::string>(l.begin(), l.end()), ", ") + "}";
}

std::size_t mask_of(const Label& l, const std::vector<std::string>& props, std::size_t line)
{
    std::size_t m = 0;
    for (const auto& p : l) {
        auto it = std::find(props.begin(), props.end(), p);
        if (it == props.end())
            throw ParseError("proposition " + p + " is not declared", line);
        m |= std::size_t(1) << (it - props.begin());
    }
    return m;
}

} // namespace

// ---------------------------------------------------------------------------
// Structures
// ---------------------------------------------------------------------------

LeveledStructure parse_structure(std::string_view text)
{
    LeveledStructure s;
    struct Pending
    {
        std::size_t node;
        std::vector<std::string> children;
        std::size_t line;
    };
    std::vector<Pending> pending;
    std::vector<std::pair<std::string, std::size_t>> loops;
    std::string root_id;

    for (const auto& [ln, t] : lines_of(text)) {
        if (starts_with(t, "agents:")) {
            s.agents = split_list(t.substr(7));
        } else if (starts_with(t, "actions ")) {
            std::size_t colon = t.find(':');
            if (colon == std::string::npos)
                throw ParseError("expected 'actions <agent>: <a>,...'", ln);
            s.actions[trim(t.substr(8, colon - 8))] = split_list(t.substr(colon + 1));
        } else if (starts_with(t, "root ")) {
            root_id = trim(t.substr(5));
        } else if (starts_with(t, "loop ")) {
            loops.emplace_back(trim(t.substr(5)), ln);
        } else if (starts_with(t, "node ")) {
            auto w = words(t);
            if (w.size() < 4 || w[2] != "depth")
                throw ParseError("expected 'node <id> depth <d> label {...} children <ids>'", ln);
            std::string id = w[1];
            std::size_t depth = parse_number(w[3], ln);
            std::size_t lpos = t.find(" label ");
            if (lpos == std::string::npos)
                throw ParseError("node without label", ln);
            auto [label, rest] = take_label(t.substr(lpos + 7), ln);
            std::vector<std::string> kids;
            if (!rest.empty()) {
                if (!starts_with(rest, "children"))
                    throw ParseError("unexpected '" + rest + "'", ln);
                kids = split_list(rest.substr(8));
            }
            std::size_t n;
            try {
                n = s.add_node(id, depth, label);
            } catch (const ValidationError& e) {
                throw ParseError(e.what(), ln);
            }
            pending.push_back({n, kids, ln});
        } else {
            throw ParseError("unrecognised line '" + t + "'", ln);
        }
    }
    for (const auto& p : pending)
        for (const auto& c : p.children) {
            std::size_t k = s.find(c);
            if (k == npos)
                throw ParseError("unknown child " + c, p.line);
            s.add_child(p.node, k);
        }
    for (const auto& [id, ln] : loops) {
        std::size_t k = s.find(id);
        if (k == npos)
            throw ParseError("unknown loop node " + id, ln);
        s.nodes[k].loop = true;
    }
    if (s.nodes.empty())
        throw ParseError("structure has no nodes", 0);
    s.root = root_id.empty() ? 0 : s.find(root_id);
    if (s.root == npos)
        throw ParseError("unknown root " + root_id, 0);
    return s;
}

std::string write_structure(const LeveledStructure& s)
{
    std::ostringstream os;
    if (!s.agents.empty())
        os << "agents: " << join(s.agents, ",") << '\n';
    for (const auto& [a, acts] : s.actions)
        os << "actions " << a << ": " << join(acts, ",") << '\n';
    os << "root " << s.nodes[s.root].id << '\n';
    for (const auto& n : s.nodes) {
        os << "node " << n.id << " depth " << n.depth << " label " << label_text(n.label);
        if (!n.children.empty()) {
            std::vector<std::string> ids;
            for (std::size_t c : n.children)
                ids.push_back(s.nodes[c].id);
            os << " children " << join(ids, ",");
        }
        os << '\n';
    }
    for (const auto& n : s.nodes)
        if (n.loop)
            os << "loop " << n.id << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// Automata over label words
// ---------------------------------------------------------------------------

namespace {

Dfa parse_dfa_lines(const std::vector<Line>& lines, const std::vector<std::string>& props)
{
    std::vector<std::string> names;
    std::map<std::string, std::size_t> index;
    std::string initial;
    std::vector<std::string> accepting;
    struct Edge
    {
        bool wildcard;
        std::size_t mask;
        std::string from, to;
        std::size_t line;
    };
    std::vector<Edge> edges;
    for (const auto& [ln, t] : lines) {
        auto w = words(t);
        if (w[0] == "states") {
            for (std::size_t i = 1; i < w.size(); ++i) {
                if (index.count(w[i]))
                    throw ParseError("duplicate state " + w[i], ln);
                index[w[i]] = names.size();
                names.push_back(w[i]);
            }
        } else if (w[0] == "initial" && w.size() == 2) {
            initial = w[1];
        } else if (w[0] == "accepting") {
            accepting.insert(accepting.end(), w.begin() + 1, w.end());
        } else if (w[0] == "on") {
            std::string rest = trim(t.substr(2));
            Edge e{false, 0, {}, {}, ln};
            if (!rest.empty() && rest[0] == '*') {
                e.wildcard = true;
                rest = trim(rest.substr(1));
            } else {
                auto [label, r] = take_label(rest, ln);
                e.mask = mask_of(label, props, ln);
                rest = r;
            }
            auto arrow = rest.find("->");
            if (arrow == std::string::npos)
                throw ParseError("expected 'on <label> <src> -> <dst>'", ln);
            e.from = trim(rest.substr(0, arrow));
            e.to = trim(rest.substr(arrow + 2));
            edges.push_back(e);
        } else {
            throw ParseError("unrecognised line '" + t + "'", ln);
        }
    }
    std::size_t first_line = lines.empty() ? 0 : lines.front().number;
    if (names.empty())
        throw ParseError("automaton declares no states", first_line);
    auto state = [&](const std::string& n, std::size_t ln) {
        auto it = index.find(n);
        if (it == index.end())
            throw ParseError("undeclared state " + n, ln);
        return it->second;
    };
    Dfa d;
    d.num_letters = std::size_t(1) << props.size();
    d.num_states = names.size();
    d.initial = initial.empty() ? 0 : state(initial, first_line);
    d.accepting.assign(names.size(), false);
    for (const auto& a : accepting)
        d.accepting[state(a, first_line)] = true;
    d.delta.assign(d.num_states * d.num_letters, npos);
    for (const auto& e : edges)
        if (!e.wildcard)
            d.delta[state(e.from, e.line) * d.num_letters + e.mask] = state(e.to, e.line);
    for (const auto& e : edges)
        if (e.wildcard) {
            std::size_t s = state(e.from, e.line);
            for (std::size_t c = 0; c < d.num_letters; ++c)
                if (d.delta[s * d.num_letters + c] == npos)
                    d.delta[s * d.num_letters + c] = state(e.to, e.line);
        }
    for (std::size_t s = 0; s < d.num_states; ++s)
        for (std::size_t c = 0; c < d.num_letters; ++c)
            if (d.delta[s * d.num_letters + c] == npos)
                throw ParseError("no transition from " + names[s] + " on letter " + std::to_string(c), first_line);
    return d;
}

} // namespace

Dfa parse_dfa(std::string_view text, const std::vector<std::string>& props)
{
    return parse_dfa_lines(lines_of(text), props);
}

RecognizableRelation parse_relation(std::string_view text)
{
    RecognizableRelation r;
    std::vector<std::pair<std::vector<Line>, std::vector<Line>>> blocks;
    int side = -1;
    for (const auto& line : lines_of(text)) {
        const auto& t = line.text;
        if (starts_with(t, "props:")) {
            r.props = split_list(t.substr(6));
        } else if (t == "pair") {
            blocks.emplace_back();
            side = -1;
        } else if (t == "left" || t == "right") {
            if (blocks.empty())
                throw ParseError("'" + t + "' outside a pair", line.number);
            side = t == "left" ? 0 : 1;
        } else {
            if (blocks.empty() || side < 0)
                throw ParseError("automaton line outside 'left'/'right'", line.number);
            (side == 0 ? blocks.back().first : blocks.back().second).push_back(line);
        }
    }
    for (const auto& [l, rt] : blocks)
        r.pairs.emplace_back(parse_dfa_lines(l, r.props), parse_dfa_lines(rt, r.props));
    return r;
}

StateRef parse_state_ref(const std::string& s)
{
    StateRef r;
    std::size_t at = s.find('@');
    r.node = s.substr(0, at);
    if (at != std::string::npos) {
        std::string lvl = s.substr(at + 1);
        if (lvl == "inf")
            r.infinite = true;
        else
            r.level = parse_number(lvl, 0);
    }
    return r;
}

std::vector<std::pair<StateRef, StateRef>> parse_explicit_pairs(std::string_view text)
{
    std::vector<std::pair<StateRef, StateRef>> out;
    for (const auto& [ln, t] : lines_of(text)) {
        auto w = words(t);
        if (w.size() != 3 || w[0] != "pair")
            throw ParseError("expected 'pair <ref> <ref>'", ln);
        try {
            out.emplace_back(parse_state_ref(w[1]), parse_state_ref(w[2]));
        } catch (const ParseError&) {
            throw ParseError("bad state reference", ln);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Jumping automata
// ---------------------------------------------------------------------------

namespace {

class BoolParser
{
public:
    BoolParser(std::string text, const std::map<std::string, std::size_t>& states, std::size_t line)
        : s_(std::move(text)), states_(states), line_(line)
    {
    }

    BoolPos parse()
    {
        BoolPos b = disjunction();
        skip();
        if (i_ != s_.size())
            fail("trailing input");
        return b;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError(msg + " in transition '" + s_ + "'", line_);
    }

    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }

    bool eat(std::string_view tok)
    {
        skip();
        if (s_.compare(i_, tok.size(), tok) == 0) {
            i_ += tok.size();
            return true;
        }
        return false;
    }

    std::string ident()
    {
        skip();
        std::size_t j = i_;
        while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_' || s_[j] == '\''))
            ++j;
        if (j == i_)
            fail("expected a name");
        std::string out = s_.substr(i_, j - i_);
        i_ = j;
        return out;
    }

    BoolPos disjunction()
    {
        BoolPos b = conjunction();
        while (eat("|"))
            b = bp::disj(b, conjunction());
        return b;
    }

    BoolPos conjunction()
    {
        BoolPos b = factor();
        while (eat("&"))
            b = bp::conj(b, factor());
        return b;
    }

    BoolPos factor()
    {
        skip();
        if (!eat("("))
        {
            std::string w = ident();
            if (w == "true")
                return bp::top();
            if (w == "false")
                return bp::bottom();
            fail("unexpected '" + w + "'");
        }
        std::size_t save = i_;
        std::optional<Dir> dir;
        std::string agent;
        if (eat("<>"))
            dir = Dir::Dia;
        else if (eat("[]"))
            dir = Dir::Box;
        else {
            skip();
            std::size_t j = i_;
            while (j < s_.size() && std::isalpha(static_cast<unsigned char>(s_[j])))
                ++j;
            std::string w = s_.substr(i_, j - i_);
            if (w == "dia" || w == "box" || w == "jdia" || w == "jbox") {
                i_ = j;
                dir = w == "dia" ? Dir::Dia : w == "box" ? Dir::Box : w == "jdia" ? Dir::JumpDia : Dir::JumpBox;
                if (*dir == Dir::JumpDia || *dir == Dir::JumpBox)
                    agent = ident();
            }
        }
        if (dir) {
            if (!eat(","))
                fail("expected ',' in atom");
            std::string q = ident();
            auto it = states_.find(q);
            if (it == states_.end())
                fail("undeclared state " + q);
            if (!eat(")"))
                fail("expected ')'");
            return bp::atom(*dir, it->second, agent);
        }
        i_ = save;
        BoolPos b = disjunction();
        if (!eat(")"))
            fail("expected ')'");
        return b;
    }

    std::string s_;
    const std::map<std::string, std::size_t>& states_;
    std::size_t line_;
    std::size_t i_ = 0;
};

} // namespace

Jta parse_jta(std::string_view text)
{
    Jta a;
    std::map<std::string, std::size_t> states;
    std::optional<std::vector<std::string>> props;
    std::string initial;
    struct Entry
    {
        std::string state;
        std::optional<Label> label; // nullopt for '*'
        std::string body;
        std::size_t line;
    };
    std::vector<Entry> entries;
    for (const auto& [ln, t] : lines_of(text)) {
        auto w = words(t);
        if (starts_with(t, "props:")) {
            props = split_list(t.substr(6));
        } else if (w[0] == "state") {
            if (w.size() != 4 || w[2] != "color")
                throw ParseError("expected 'state <id> color <c>'", ln);
            if (states.count(w[1]))
                throw ParseError("duplicate state " + w[1], ln);
            states[w[1]] = a.state_names.size();
            a.state_names.push_back(w[1]);
            a.colors.push_back(static_cast<unsigned>(parse_number(w[3], ln)));
        } else if (w[0] == "initial" && w.size() == 2) {
            initial = w[1];
        } else if (w[0] == "on") {
            std::size_t assign = t.find(":=");
            if (assign == std::string::npos || w.size() < 3)
                throw ParseError("expected 'on <state> <label> := <formula>'", ln);
            std::string head = trim(t.substr(2, assign - 2));
            std::size_t sp = head.find_first_of(" \t");
            if (sp == std::string::npos)
                throw ParseError("missing label in transition", ln);
            Entry e{head.substr(0, sp), std::nullopt, trim(t.substr(assign + 2)), ln};
            std::string lab = trim(head.substr(sp));
            if (lab != "*") {
                auto [label, rest] = take_label(lab, ln);
                if (!rest.empty())
                    throw ParseError("unexpected '" + rest + "'", ln);
                e.label = label;
            }
            entries.push_back(std::move(e));
        } else {
            throw ParseError("unrecognised line '" + t + "'", ln);
        }
    }
    if (a.state_names.empty())
        throw ParseError("automaton declares no states", 0);
    if (props) {
        a.props = *props;
    } else {
        std::set<std::string> ps;
        for (const auto& e : entries)
            if (e.label)
                ps.insert(e.label->begin(), e.label->end());
        a.props.assign(ps.begin(), ps.end());
    }
    if (a.props.size() > 16)
        throw ParseError("too many propositions", 0);
    a.initial = 0;
    if (!initial.empty()) {
        auto it = states.find(initial);
        if (it == states.end())
            throw ParseError("undeclared initial state " + initial, 0);
        a.initial = it->second;
    }
    // Unlisted letters fall back to the state's '*' entry, then to false.
    a.delta.assign(a.state_names.size(), std::vector<BoolPos>(a.num_letters()));
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& e : entries) {
            if ((pass == 0) != e.label.has_value())
                continue;
            auto it = states.find(e.state);
            if (it == states.end())
                throw ParseError("undeclared state " + e.state, e.line);
            BoolPos b = BoolParser(e.body, states, e.line).parse();
            auto& row = a.delta[it->second];
            if (e.label) {
                row[mask_of(*e.label, a.props, e.line)] = b;
            } else {
                for (auto& cell : row)
                    if (!cell)
                        cell = b;
            }
        }
    for (auto& row : a.delta)
        for (auto& cell : row)
            if (!cell)
                cell = bp::bottom();
    a.check();
    return a;
}

// ---------------------------------------------------------------------------
// Games
// ---------------------------------------------------------------------------

ParityGame parse_game(std::string_view text)
{
    ParityGame g;
    std::map<std::string, std::size_t> index;
    struct Pending
    {
        std::size_t pos;
        std::vector<std::string> moves;
        std::size_t line;
    };
    std::vector<Pending> pending;
    std::vector<std::tuple<std::string, Player, std::size_t>> terminals;
    std::string initial;
    auto player = [](const std::string& s, std::size_t ln) {
        if (s == "E")
            return Player::Eve;
        if (s == "A")
            return Player::Adam;
        throw ParseError("expected E or A, found '" + s + "'", ln);
    };
    for (const auto& [ln, t] : lines_of(text)) {
        auto w = words(t);
        if (w[0] == "pos") {
            if (w.size() < 6 || w[2] != "owner" || w[4] != "color")
                throw ParseError("expected 'pos <id> owner E|A color <c> moves <ids>'", ln);
            if (index.count(w[1]))
                throw ParseError("duplicate position " + w[1], ln);
            std::size_t v = g.add_position(player(w[3], ln), static_cast<unsigned>(parse_number(w[5], ln)), w[1]);
            index[w[1]] = v;
            std::vector<std::string> mv;
            std::size_t mpos = t.find(" moves");
            if (mpos != std::string::npos)
                mv = split_list(t.substr(mpos + 6));
            pending.push_back({v, mv, ln});
        } else if (w[0] == "terminal") {
            if (w.size() != 4 || w[2] != "winner")
                throw ParseError("expected 'terminal <id> winner E|A'", ln);
            terminals.emplace_back(w[1], player(w[3], ln), ln);
        } else if (w[0] == "initial" && w.size() == 2) {
            initial = w[1];
        } else {
            throw ParseError("unrecognised line '" + t + "'", ln);
        }
    }
    for (const auto& [id, winner, ln] : terminals) {
        auto it = index.find(id);
        std::size_t v;
        if (it == index.end()) {
            v = g.add_position(winner, 0, id);
            index[id] = v;
        } else {
            v = it->second;
        }
        g.set_terminal(v, winner);
    }
    for (const auto& p : pending)
        for (const auto& m : p.moves) {
            auto it = index.find(m);
            if (it == index.end())
                throw ParseError("move to undeclared position " + m, p.line);
            g.add_move(p.pos, it->second);
        }
    for (const auto& [id, winner, ln] : terminals)
        if (!g.moves[index[id]].empty())
            throw ParseError("terminal " + id + " has moves", ln);
    if (g.size() == 0)
        throw ParseError("game has no positions", 0);
    if (!initial.empty()) {
        auto it = index.find(initial);
        if (it == index.end())
            throw ParseError("undeclared initial position " + initial, 0);
        g.initial = it->second;
    }
    return g;
}

namespace {

std::vector<std::string> game_ids(const ParityGame& g)
{
    std::set<std::string> seen;
    bool safe = true;
    for (const auto& n : g.names) {
        bool tok = !n.empty() && std::all_of(n.begin(), n.end(), [](char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '@' || c == '-';
        });
        safe = safe && tok && seen.insert(n).second;
    }
    if (safe)
        return g.names;
    std::vector<std::string> ids;
    for (std::size_t v = 0; v < g.size(); ++v)
        ids.push_back("v" + std::to_string(v));
    return ids;
}

} // namespace

std::string write_game(const ParityGame& g)
{
    auto ids = game_ids(g);
    std::ostringstream os;
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (ids[v] != g.names[v])
            os << "# " << ids[v] << " = " << g.names[v] << '\n';
        os << "pos " << ids[v] << " owner " << (g.owner[v] == Player::Eve ? 'E' : 'A') << " color " << g.color[v];
        if (!g.moves[v].empty()) {
            std::vector<std::string> mv;
            for (std::size_t u : g.moves[v])
                mv.push_back(ids[u]);
            os << " moves " << join(mv, ",");
        }
        os << '\n';
        if (g.is_terminal(v) && g.declared_winner[v])
            os << "terminal " << ids[v] << " winner " << (*g.declared_winner[v] == Player::Eve ? 'E' : 'A') << '\n';
    }
    if (g.size() > 0)
        os << "initial " << ids[g.initial] << '\n';
    return os.str();
}

PairSet parse_pairs(std::string_view text, const ParityGame& g, const ParityGame& g2)
{
    auto ids = game_ids(g), ids2 = game_ids(g2);
    auto lookup = [](const std::vector<std::string>& xs, const std::string& id) {
        auto it = std::find(xs.begin(), xs.end(), id);
        return it == xs.end() ? npos : std::size_t(it - xs.begin());
    };
    PairSet z;
    for (const auto& [ln, t] : lines_of(text)) {
        auto w = words(t);
        if (w.size() != 2)
            throw ParseError("expected '<position> <position>'", ln);
        std::size_t a = lookup(ids, w[0]), b = lookup(ids2, w[1]);
        if (a == npos || b == npos)
            throw ParseError("unknown position " + (a == npos ? w[0] : w[1]), ln);
        z.emplace(a, b);
    }
    return z;
}

std::string write_pairs(const PairSet& z, const ParityGame& g, const ParityGame& g2)
{
    auto ids = game_ids(g), ids2 = game_ids(g2);
    std::ostringstream os;
    for (auto [a, b] : z)
        os << ids[a] << ' ' << ids2[b] << '\n';
    return os.str();
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace epimu
