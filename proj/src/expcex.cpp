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

#include "epimu/expcex.hpp"

#include "epimu/logic.hpp"
#include "epimu/xlate.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <sstream>

namespace epimu {

std::string code_word(std::size_t k, unsigned n)
{
    if (k == 0 || (n < 64 && k > (std::size_t(1) << n)))
        throw ValidationError("code index out of range");
    std::string w(n, '0');
    std::size_t v = k - 1;
    for (unsigned b = 0; b < n; ++b)
        if (v >> (n - 1 - b) & 1)
            w[b] = '1';
    return w;
}

namespace {

std::size_t family_width(unsigned n) { return (std::size_t(1) << n) + 2; }

std::string x_id(std::size_t k) { return "x" + std::to_string(k); }
std::string y_id(std::size_t k) { return "y" + std::to_string(k); }
std::string block_id(std::size_t k, const std::string& w) { return w.empty() ? y_id(k) : y_id(k) + "." + w; }

/// Block index and suffix of a node id of the form y<k> or y<k>.<w>.
std::optional<std::pair<std::size_t, std::string>> split_block_id(const std::string& id)
{
    if (id.size() < 2 || id[0] != 'y')
        return std::nullopt;
    std::size_t dot = id.find('.');
    std::string num = id.substr(1, dot == std::string::npos ? std::string::npos : dot - 1);
    if (num.empty() || !std::all_of(num.begin(), num.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return std::nullopt;
    return std::make_pair(std::stoul(num), dot == std::string::npos ? std::string() : id.substr(dot));
}

/// Adds the binary block of height n below y_k; p sits at the leaf `marked`.
void add_block(TreeArena& t, std::size_t yk, std::size_t k, unsigned n, const std::string& marked)
{
    std::vector<std::pair<std::size_t, std::string>> frontier{{yk, ""}};
    for (unsigned d = 1; d <= n; ++d) {
        std::vector<std::pair<std::size_t, std::string>> next;
        for (const auto& [parent, w] : frontier)
            for (char bit : {'0', '1'}) {
                std::string cw = w + bit;
                Label l{bit == '0' ? "p_a0" : "p_a1"};
                if (d == n && cw == marked)
                    l.insert("p");
                std::size_t c = t.add_node(block_id(k, cw), 2 + d, l, d == n);
                t.add_child(parent, c);
                next.emplace_back(c, cw);
            }
        frontier = std::move(next);
    }
}

TreeArena build_member(unsigned n, std::size_t i)
{
    const std::size_t m = family_width(n);
    const std::size_t half = std::size_t(1) << n;
    TreeArena t;
    t.agents = {"a"};
    t.actions["a"] = {"a0", "a1"};
    t.root = t.add_node("root", 0, {});
    for (std::size_t k = 1; k <= m; ++k) {
        Label xl{"p_a0"};
        if (k <= half)
            xl.insert("p");
        std::size_t x = t.add_node(x_id(k), 1, xl);
        t.add_child(t.root, x);
        std::size_t y = t.add_node(y_id(k), 2, {"p_a0"});
        t.add_child(x, y);
        add_block(t, y, k, n, code_word(k <= half ? k : i, n));
    }
    return t;
}

bool has_p(const Label& l) { return l.count("p") > 0; }

} // namespace

std::vector<TreeArena> build_family(unsigned n)
{
    if (n == 0)
        throw ValidationError("family parameter must be at least 1");
    if (n > 20)
        throw ValidationError("family parameter too large");
    std::vector<TreeArena> out;
    for (std::size_t i = 1; i <= (std::size_t(1) << n); ++i)
        out.push_back(build_member(n, i));
    return out;
}

TreeArena combine_t0(const std::vector<TreeArena>& family, std::size_t i, std::size_t j)
{
    if (i == j)
        throw ValidationError("combine_t0 needs two distinct trees");
    if (i == 0 || j == 0 || i > family.size() || j > family.size())
        throw ValidationError("tree index out of range");
    TreeArena t = family[i - 1];
    const TreeArena& tj = family[j - 1];
    const std::size_t replaced = family.size() + 1;
    for (auto& node : t.nodes) {
        auto b = split_block_id(node.id);
        if (b && b->first == replaced && !b->second.empty())
            node.label = tj.nodes[tj.at(node.id)].label;
    }
    return t;
}

namespace {

std::string label_str(const Label& l)
{
    std::string s = "{";
    bool first = true;
    for (const auto& p : l) {
        s += (first ? "" : ", ") + p;
        first = false;
    }
    return s + "}";
}

void render_tree(std::ostringstream& os, const TreeArena& t, const std::string& title)
{
    os << title << '\n' << "  root " << label_str(t.nodes[t.root].label) << '\n';
    for (std::size_t x : t.nodes[t.root].children) {
        const auto& xn = t.nodes[x];
        std::size_t y = xn.children.front();
        os << "  +- " << xn.id << ' ' << label_str(xn.label) << " -> " << t.nodes[y].id << ' '
           << label_str(t.nodes[y].label) << " -> p at ";
        std::string hit = "-";
        for (const auto& node : t.nodes) {
            auto b = split_block_id(node.id);
            if (b && node.loop && has_p(node.label) && block_id(b->first, "") == t.nodes[y].id)
                hit = b->second.substr(1);
        }
        os << hit << '\n';
    }
}

} // namespace

std::string render_figure(const std::vector<TreeArena>& family, std::size_t i, std::size_t j)
{
    TreeArena t0 = combine_t0(family, i, j);
    std::ostringstream os;
    render_tree(os, family[i - 1], "T_" + std::to_string(i));
    os << '\n';
    render_tree(os, family[j - 1], "T_" + std::to_string(j));
    os << '\n';
    render_tree(os, t0, "T_0 (T_" + std::to_string(i) + " with the block below y" + std::to_string(family.size() + 1) +
                            " from T_" + std::to_string(j) + ")");
    return os.str();
}

const char* to_string(Classification c)
{
    switch (c) {
    case Classification::RejectsAModel: return "RejectsAModel";
    case Classification::AcceptsANonModel: return "AcceptsANonModel";
    case Classification::Inconclusive: return "Inconclusive";
    }
    return "?";
}

nlohmann::json ExperimentReport::to_json() const
{
    nlohmann::json j;
    j["n"] = n;
    j["automaton_states"] = automaton_states;
    auto& ts = j["trees"] = nlohmann::json::array();
    for (const auto& t : trees)
        ts.push_back({{"index", t.index},
                      {"atl_holds", t.atl_holds},
                      {"witness", t.witness_levels},
                      {"witness_matches", t.witness_matches},
                      {"accepted", t.accepted},
                      {"visit", t.visit}});
    if (collision)
        j["collision"] = {collision->first, collision->second};
    else
        j["collision"] = nullptr;
    j["t0"] = {{"atl_holds", t0_atl_holds}, {"ef_p", t0_ef_p}, {"accepted", t0_accepted}};
    j["z"] = {{"ok", z_ok}, {"pairs", z_pairs}, {"detail", z_detail}};
    j["z_prime"] = {{"ok", z_prime_ok}, {"pairs", z_prime_pairs}, {"detail", z_prime_detail}};
    j["transfer_ok"] = transfer_ok;
    j["sigma0"] = {{"ok", sigma0_ok}, {"exits", sigma0_exits}, {"detail", sigma0_detail}};
    j["classification"] = to_string(classification);
    if (classification == Classification::RejectsAModel)
        j["rejected_index"] = rejected_index;
    if (!failed_step.empty())
        j["failed_step"] = failed_step;
    return j;
}

AcceptanceGame family_game(const Jta& a, const QuotientSystem& q, unsigned n)
{
    std::vector<std::pair<std::size_t, std::size_t>> seeds;
    for (std::size_t k = 1; k <= family_width(n); ++k) {
        auto states = q.states_of(y_id(k));
        if (states.size() != 1)
            throw ValidationError("quotient does not carry a single state for " + y_id(k));
        for (std::size_t s = 0; s < a.num_states(); ++s)
            seeds.emplace_back(states.front(), s);
    }
    return build_acceptance_game(a, q, seeds);
}

namespace {

/// Position v_k^q of a family game.
std::size_t exit_position(const AcceptanceGame& g, std::size_t k, std::size_t s)
{
    std::size_t x = g.quotient->states_of(y_id(k)).front();
    return g.find(x, s, g.automaton->transition(s, g.quotient->labels[x]));
}

const std::string& node_id(const AcceptanceGame& g, std::size_t v)
{
    const auto& q = *g.quotient;
    return q.node_ids[q.states[g.positions[v].x].node];
}

} // namespace

PairSet transfer_relation(const AcceptanceGame& g0, const AcceptanceGame& gk, unsigned n, std::size_t i,
                          std::size_t j, bool prime)
{
    const std::size_t m = family_width(n);
    // The block of G0 that differs from the other game, the block it copies,
    // and the block of G0 that copies the other game's differing block.
    const std::size_t moved = prime ? m : m - 1;
    const std::size_t moved_to = prime ? i : j;
    const std::size_t swapped = prime ? j : i;

    auto image = [&](const std::string& id) {
        std::vector<std::string> out;
        auto b = split_block_id(id);
        if (b && b->first == moved) {
            out.push_back(block_id(moved_to, "") + b->second);
            return out;
        }
        out.push_back(id);
        if (b && b->first == swapped)
            out.push_back(block_id(moved, "") + b->second);
        return out;
    };
    auto matches = [&](std::size_t u, std::size_t u2) {
        const auto& p = g0.positions[u];
        const auto& p2 = gk.positions[u2];
        if (p.q != p2.q || g0.quotient->states[p.x].level != gk.quotient->states[p2.x].level)
            return false;
        auto ids = image(node_id(g0, u));
        if (std::find(ids.begin(), ids.end(), node_id(gk, u2)) == ids.end())
            return false;
        return structurally_equal(p.alpha, p2.alpha);
    };

    PairSet z;
    std::vector<std::pair<std::size_t, std::size_t>> work;
    auto add = [&](std::size_t u, std::size_t u2) {
        if (z.emplace(u, u2).second)
            work.emplace_back(u, u2);
    };
    for (std::size_t k = 1; k <= m; ++k) {
        if (k == moved)
            continue;
        for (std::size_t s = 0; s < g0.automaton->num_states(); ++s) {
            std::size_t u = exit_position(g0, k, s), u2 = exit_position(gk, k, s);
            if (u != npos && u2 != npos)
                add(u, u2);
        }
    }
    while (!work.empty()) {
        auto [u, u2] = work.back();
        work.pop_back();
        for (std::size_t s : g0.game.moves[u])
            for (std::size_t s2 : gk.game.moves[u2])
                if (matches(s, s2))
                    add(s, s2);
    }
    return z;
}

namespace {

struct TreeRun
{
    TreeResult result;
    std::exception_ptr error;
};

/// Positions over the root and the x nodes.
bool in_start(const AcceptanceGame& g, std::size_t v)
{
    const auto& q = *g.quotient;
    return q.states[g.positions[v].x].level <= 1;
}

std::vector<std::string> witness_of(const QuotientSystem& q, const Profile& p)
{
    std::vector<std::size_t> levels;
    for (std::size_t l = 0; l < q.max_depth; ++l)
        levels.push_back(l);
    levels.push_back(kInfiniteLevel);
    std::vector<std::string> out;
    const auto& acts = q.arena_actions.at("a");
    for (std::size_t l : levels) {
        std::string act = "?";
        for (std::size_t s = 0; s < q.size(); ++s)
            if (q.states[s].level == l) {
                act = acts[p.strategies.front().action[s]];
                break;
            }
        out.push_back(act);
    }
    return out;
}

std::vector<std::string> expected_witness(std::size_t i, unsigned n)
{
    std::vector<std::string> w{"a0", "a0"};
    for (char c : code_word(i, n))
        w.push_back(c == '0' ? "a0" : "a1");
    w.push_back("a0");
    return w;
}

StateSet prop_states(const QuotientSystem& q, const std::string& p)
{
    StateSet s(q.size());
    for (std::size_t x = 0; x < q.size(); ++x)
        if (q.labels[x].count(p))
            s.set(x);
    return s;
}

} // namespace

ExperimentReport run_experiment(const Jta& a, const ExperimentOptions& opts)
{
    for (const auto& p : a.props)
        if (p != "p" && p != "p_a0" && p != "p_a1")
            throw ValidationError("automaton reads proposition " + p + " outside {p, p_a0, p_a1}");
    for (const auto& ag : a.agents())
        if (ag != "a")
            throw ValidationError("automaton jumps along agent " + ag + "; only agent a exists");
    a.check();

    ExperimentReport rep;
    rep.automaton_states = a.num_states();
    rep.n = static_cast<unsigned>(a.num_states() + 1);
    if (rep.n > opts.max_n)
        throw ValidationError("automaton has " + std::to_string(a.num_states()) + " states; the family would need " +
                              std::to_string(rep.n) + " > " + std::to_string(opts.max_n) + " levels");
    const unsigned n = rep.n;
    const auto family = build_family(n);
    const auto profile = RelationProfile::equal_level({"a"});
    const auto goal = atl::eventually({"a"}, atl::prop("p"));
    const std::size_t count = family.size();
    const std::size_t m = family_width(n);

    std::vector<TreeRun> runs(count);
    auto run_one = [&](std::size_t idx) {
        TreeRun& run = runs[idx];
        try {
            TreeResult& r = run.result;
            r.index = idx + 1;
            auto q = build_quotient(family[idx], profile);
            AtliOptions atl = opts.atl;
            atl.parallel = false;
            r.atl_holds = eval_atl(q, goal, atl).test(q.root);
            StateSet all(q.size());
            all.set();
            auto prof = synthesize_profile_at(q, {"a"}, Objective::until(all, prop_states(q, "p")), q.root, atl);
            if (prof) {
                r.witness_levels = witness_of(q, *prof);
                r.witness_matches = r.witness_levels == expected_witness(r.index, n);
            }
            auto g = family_game(a, q, n);
            auto sol = solve(g.game);
            r.accepted = sol.winner(g.game.initial) == Player::Eve;
            if (r.accepted)
                r.visit = visit_set(g, sol.eve_strategy, q.states_of(y_id(m - 1)).front());
        } catch (...) {
            run.error = std::current_exception();
        }
    };
    if (opts.parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t idx = 0; idx < count; ++idx)
            run_one(idx);
    } else {
        for (std::size_t idx = 0; idx < count; ++idx)
            run_one(idx);
    }
    for (auto& run : runs) {
        if (run.error)
            std::rethrow_exception(run.error);
        rep.trees.push_back(std::move(run.result));
    }

    for (const auto& t : rep.trees)
        if (!t.accepted) {
            if (t.atl_holds) {
                rep.classification = Classification::RejectsAModel;
                rep.rejected_index = t.index;
            } else {
                rep.failed_step = "T_" + std::to_string(t.index) + " is rejected but is not a model";
            }
            return rep;
        }

    for (std::size_t i = 0; i < count && !rep.collision; ++i)
        for (std::size_t j = i + 1; j < count; ++j)
            if (rep.trees[i].visit == rep.trees[j].visit) {
                rep.collision = std::make_pair(i + 1, j + 1);
                break;
            }
    if (!rep.collision) {
        rep.failed_step = "no two trees share a visit set";
        return rep;
    }
    const auto [i, j] = *rep.collision;

    const TreeArena t0 = combine_t0(family, i, j);
    const auto q0 = build_quotient(t0, profile);
    const auto qi = build_quotient(family[i - 1], profile);
    const auto qj = build_quotient(family[j - 1], profile);
    rep.t0_atl_holds = eval_atl(q0, goal, opts.atl).test(q0.root);
    rep.t0_ef_p = eval_mu(parse_mu_formula("mu X. (p | <> X)"), q0).test(q0.root);

    const auto g0 = family_game(a, q0, n);
    const auto gi = family_game(a, qi, n);
    const auto gj = family_game(a, qj, n);
    const auto sol0 = solve(g0.game);
    const auto soli = solve(gi.game);
    rep.t0_accepted = sol0.winner(g0.game.initial) == Player::Eve;

    auto z = transfer_relation(g0, gi, n, i, j, false);
    auto zc = check_bisimulation(g0.game, gi.game, z);
    rep.z_pairs = z.size();
    rep.z_ok = zc.ok;
    rep.z_detail = zc.ok ? "" : zc.clause + ": " + zc.detail;
    auto zp = transfer_relation(g0, gj, n, i, j, true);
    auto zpc = check_bisimulation(g0.game, gj.game, zp);
    rep.z_prime_pairs = zp.size();
    rep.z_prime_ok = zpc.ok;
    rep.z_prime_detail = zpc.ok ? "" : zpc.clause + ": " + zpc.detail;

    // The start region of G0 and G^i coincide; positions are matched by name.
    std::map<std::string, std::size_t> g0_by_name;
    for (std::size_t v = 0; v < g0.game.size(); ++v)
        g0_by_name.emplace(g0.game.names[v], v);
    std::vector<std::size_t> to_g0(gi.game.size(), npos), to_gi(g0.game.size(), npos);
    for (std::size_t v = 0; v < gi.game.size(); ++v) {
        auto it = g0_by_name.find(gi.game.names[v]);
        if (it != g0_by_name.end()) {
            to_g0[v] = it->second;
            to_gi[it->second] = v;
        }
    }

    // Exits of sigma_i: first positions outside the start region.
    std::set<std::size_t> exits;
    {
        std::vector<bool> seen(gi.game.size(), false);
        std::vector<std::size_t> stack{gi.game.initial};
        seen[gi.game.initial] = true;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            if (!in_start(gi, v)) {
                exits.insert(v);
                continue;
            }
            std::vector<std::size_t> next;
            if (gi.game.owner[v] == Player::Eve) {
                if (soli.eve_strategy(v) != npos)
                    next.push_back(soli.eve_strategy(v));
            } else {
                next = gi.game.moves[v];
            }
            for (std::size_t u : next)
                if (!seen[u]) {
                    seen[u] = true;
                    stack.push_back(u);
                }
        }
    }
    rep.sigma0_exits = exits.size();
    rep.transfer_ok = true;
    for (std::size_t v : exits)
        if (to_g0[v] == npos || !sol0.eve.test(to_g0[v]))
            rep.transfer_ok = false;

    // Memory 0 follows sigma_i inside the start region; memory 1 follows the
    // winning strategy of G0 once the play has left it.
    FiniteMemoryStrategy sigma0;
    sigma0.memory_size = 2;
    sigma0.initial_memory = 0;
    sigma0.update = [&g0](std::size_t mem, std::size_t to) -> std::size_t {
        return mem == 0 && !in_start(g0, to) ? 1 : mem;
    };
    sigma0.choose = [&](std::size_t mem, std::size_t v) -> std::size_t {
        if (mem == 1)
            return sol0.eve_strategy(v);
        std::size_t w = to_gi[v];
        if (w == npos)
            return npos;
        std::size_t c = soli.eve_strategy(w);
        return c == npos ? npos : to_g0[c];
    };
    auto check = verify_strategy(g0.game, sigma0, g0.game.initial);
    rep.sigma0_ok = check.winning;
    rep.sigma0_detail = check.diagnostic;

    if (rep.t0_accepted && !rep.t0_atl_holds) {
        rep.classification = Classification::AcceptsANonModel;
    } else if (!rep.t0_accepted && rep.t0_atl_holds) {
        rep.classification = Classification::RejectsAModel;
        rep.rejected_index = 0;
    } else {
        rep.failed_step = rep.t0_accepted ? "T_0 is accepted and is a model" : "T_0 is rejected and is not a model";
    }
    return rep;
}

} // namespace epimu
