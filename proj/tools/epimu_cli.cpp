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

// Command-line front end. Exit status: 0 verdict true or report produced,
// 1 parse or validation error, 2 verdict false.

#include "epimu/atli.hpp"
#include "epimu/expcex.hpp"
#include "epimu/formats.hpp"
#include "epimu/games.hpp"
#include "epimu/jta.hpp"
#include "epimu/logic.hpp"
#include "epimu/worlds.hpp"
#include "epimu/xlate.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace epimu;
using nlohmann::json;

namespace {

constexpr int kTrue = 0;
constexpr int kError = 1;
constexpr int kFalse = 2;

AgentRelation relation_from(const std::string& kind, const std::string& file)
{
    if (kind == "eqlevel")
        return AgentRelation::equal_level();
    if (kind == "rel")
        return AgentRelation::recognizable_relation(parse_relation(read_file(file)));
    if (kind == "explicit")
        return AgentRelation::explicit_pairs(parse_explicit_pairs(read_file(file)));
    throw ValidationError("unknown relation kind '" + kind + "'");
}

/**
 * `eqlevel`, `rel:<file>`, `explicit:<file>` give every agent the same
 * relation. Any other argument names a profile file with lines
 * `agent <name> eqlevel|rel <file>|explicit <file>`.
 */
RelationProfile load_profile(const std::string& arg, const std::set<std::string>& agents)
{
    RelationProfile p;
    auto colon = arg.find(':');
    if (arg == "eqlevel" || (colon != std::string::npos && (arg.substr(0, colon) == "rel" || arg.substr(0, colon) == "explicit"))) {
        std::string kind = colon == std::string::npos ? arg : arg.substr(0, colon);
        std::string file = colon == std::string::npos ? "" : arg.substr(colon + 1);
        AgentRelation r = relation_from(kind, file);
        for (const auto& a : agents)
            p.agents[a] = r;
        return p;
    }
    fs::path base = fs::path(arg).parent_path();
    std::istringstream in(read_file(arg));
    std::string line;
    std::size_t ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (auto h = line.find('#'); h != std::string::npos)
            line.resize(h);
        std::istringstream ls(line);
        std::string kw, agent, kind, file;
        if (!(ls >> kw))
            continue;
        if (kw != "agent" || !(ls >> agent >> kind))
            throw ParseError("expected 'agent <name> <kind> [file]'", ln);
        ls >> file;
        if (!file.empty() && fs::path(file).is_relative())
            file = (base / file).string();
        p.agents[agent] = relation_from(kind, file);
    }
    for (const auto& a : agents)
        if (!p.agents.count(a))
            throw ValidationError("profile does not define agent " + a);
    return p;
}

std::set<std::string> with_agents(const LeveledStructure& s, std::set<std::string> more)
{
    more.insert(s.agents.begin(), s.agents.end());
    return more;
}

std::vector<std::string> state_names(const QuotientSystem& q, const StateSet& s)
{
    std::vector<std::string> out;
    for (std::size_t x = 0; x < q.size(); ++x)
        if (s.test(x))
            out.push_back(q.name(x));
    return out;
}

void print_verdict(const QuotientSystem& q, const StateSet& s, bool as_json, const std::string& formula)
{
    bool root = s.test(q.root);
    auto names = state_names(q, s);
    if (as_json) {
        std::cout << json{{"formula", formula}, {"states", names}, {"root", root}}.dump(2) << '\n';
        return;
    }
    std::cout << "formula: " << formula << '\n' << "states:";
    for (const auto& n : names)
        std::cout << ' ' << n;
    std::cout << '\n' << "root: " << (root ? "true" : "false") << '\n';
}

std::string player_tag(Player p) { return to_string(p); }

json strategy_json(const ParityGame& g, const Solution& s)
{
    json eve = json::object(), adam = json::object();
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (s.eve_strategy(v) != npos)
            eve[g.names[v]] = g.names[s.eve_strategy(v)];
        if (s.adam_strategy(v) != npos)
            adam[g.names[v]] = g.names[s.adam_strategy(v)];
    }
    return {{"eve", eve}, {"adam", adam}};
}

void write_text(const fs::path& p, const std::string& text)
{
    std::ofstream out(p, std::ios::binary);
    if (!out)
        throw ValidationError("cannot write " + p.string());
    out << text;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Model checking and automata for epistemic fixpoint logics"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "Machine-readable output");

    // check-mu
    std::string structure_file, profile_arg, formula_text;
    auto* check_mu = app.add_subcommand("check-mu", "Evaluate a mu-calculus formula on a structure");
    check_mu->add_option("structure", structure_file)->required();
    check_mu->add_option("profile", profile_arg)->required();
    check_mu->add_option("formula", formula_text)->required();

    // check-atl
    std::string mode_text = "de-re";
    bool include_self = false, vacuous = false;
    auto* check_atl = app.add_subcommand("check-atl", "Evaluate an ATL formula on a tree-arena");
    check_atl->add_option("structure", structure_file)->required();
    check_atl->add_option("profile", profile_arg)->required();
    check_atl->add_option("formula", formula_text)->required();
    check_atl->add_option("--mode", mode_text, "de-re | de-dicto | uniform-only");
    check_atl->add_flag("--include-self", include_self, "Add the current state to the epistemic start set");
    check_atl->add_flag("--vacuous-blocking", vacuous, "Ignore outcome nodes with no compatible child");

    // translate
    std::string to_jta, to_mu;
    bool equations_only = false;
    auto* translate = app.add_subcommand("translate", "Translate between formulas and automata");
    auto* opt_jta = translate->add_option("--to-jta", to_jta, "Formula to translate into an automaton");
    auto* opt_mu = translate->add_option("--to-mu", to_mu, "Automaton file to translate into a formula");
    translate->add_flag("--equations", equations_only, "Print the equation system instead of a closed formula");
    opt_jta->excludes(opt_mu);

    // accept
    std::string jta_file;
    auto* accept = app.add_subcommand("accept", "Decide acceptance of a structure by an automaton");
    accept->add_option("automaton", jta_file)->required();
    accept->add_option("structure", structure_file)->required();
    accept->add_option("profile", profile_arg)->required();

    // solve
    std::string game_file, game_file2, pairs_file;
    auto* solve_cmd = app.add_subcommand("solve", "Solve a parity game");
    solve_cmd->add_option("game", game_file)->required();

    // bisim
    auto* bisim = app.add_subcommand("bisim", "Check or compute a game bisimulation");
    bisim->add_option("game1", game_file)->required();
    bisim->add_option("game2", game_file2)->required();
    bisim->add_option("pairs", pairs_file);

    // counterexample
    std::string cex_jta, cex_formula, emit_trees, emit_figure, emit_games;
    bool serial = false;
    unsigned max_n = 6;
    auto* cex = app.add_subcommand("counterexample", "Build a tree on which the automaton and <<a>> F p disagree");
    auto* opt_cj = cex->add_option("--jta", cex_jta, "Candidate automaton file");
    auto* opt_cf = cex->add_option("--from-formula", cex_formula, "Candidate given as a mu-calculus formula");
    opt_cj->excludes(opt_cf);
    cex->add_option("--emit-trees", emit_trees, "Directory for the trees in structure format");
    cex->add_option("--emit-figure", emit_figure, "File for a text drawing of T_i, T_j and T_0");
    cex->add_option("--emit-games", emit_games, "Directory for G0, G^i, G^j and the two relations");
    cex->add_option("--mode", mode_text, "ATL semantics: de-re | de-dicto | uniform-only");
    cex->add_flag("--include-self", include_self);
    cex->add_flag("--vacuous-blocking", vacuous);
    cex->add_flag("--serial", serial, "Run the per-tree loop on one thread");
    cex->add_option("--max-n", max_n, "Largest family parameter attempted");

    // relsize
    std::string relation_file;
    auto* relsize = app.add_subcommand("relsize", "Size of a recognizable relation");
    relsize->add_option("relation", relation_file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kError;
    }

    try {
        if (*check_mu) {
            auto s = parse_structure(read_file(structure_file));
            auto f = parse_mu_formula(formula_text);
            auto q = build_quotient(s, load_profile(profile_arg, with_agents(s, agents(f))));
            auto sat = eval_mu(f, q);
            print_verdict(q, sat, as_json, to_string(f));
            return sat.test(q.root) ? kTrue : kFalse;
        }
        if (*check_atl) {
            auto s = parse_structure(read_file(structure_file));
            auto f = parse_atl_formula(formula_text);
            auto q = build_quotient(s, load_profile(profile_arg, with_agents(s, agents(f))));
            AtliOptions opts;
            opts.mode = parse_semantics_mode(mode_text);
            opts.include_self = include_self;
            opts.blocking = vacuous ? Blocking::Vacuous : Blocking::Strict;
            auto sat = eval_atl(q, f, opts);
            print_verdict(q, sat, as_json, to_string(f));
            return sat.test(q.root) ? kTrue : kFalse;
        }
        if (*translate) {
            if (*opt_jta) {
                auto a = formula_to_jta(parse_mu_formula(to_jta));
                if (as_json)
                    std::cout << json{{"automaton", to_string(a)}, {"states", a.num_states()}, {"size", a.size()}}.dump(2)
                              << '\n';
                else
                    std::cout << to_string(a);
                return kTrue;
            }
            if (*opt_mu) {
                auto a = parse_jta(read_file(to_mu));
                auto e = jta_to_equations(a);
                std::string out = equations_only ? to_string(e) : to_string(flatten(e));
                if (as_json)
                    std::cout << json{{equations_only ? "equations" : "formula", out}}.dump(2) << '\n';
                else
                    std::cout << out << '\n';
                return kTrue;
            }
            throw ValidationError("translate needs --to-jta or --to-mu");
        }
        if (*accept) {
            auto a = parse_jta(read_file(jta_file));
            auto s = parse_structure(read_file(structure_file));
            auto q = build_quotient(s, load_profile(profile_arg, with_agents(s, a.agents())));
            auto g = build_acceptance_game(a, q);
            auto sol = solve(g.game);
            Player w = sol.winner(g.game.initial);
            // Eve's choices on the positions reachable under her strategy.
            std::vector<std::pair<std::string, std::string>> choices;
            if (w == Player::Eve) {
                std::vector<bool> seen(g.game.size(), false);
                std::vector<std::size_t> stack{g.game.initial};
                seen[g.game.initial] = true;
                while (!stack.empty()) {
                    std::size_t v = stack.back();
                    stack.pop_back();
                    std::vector<std::size_t> next = g.game.moves[v];
                    if (g.game.owner[v] == Player::Eve && !next.empty()) {
                        next = {sol.eve_strategy(v)};
                        choices.emplace_back(g.game.names[v], g.game.names[next.front()]);
                    }
                    for (std::size_t u : next)
                        if (!seen[u]) {
                            seen[u] = true;
                            stack.push_back(u);
                        }
                }
                std::sort(choices.begin(), choices.end());
            }
            if (as_json) {
                json c = json::array();
                for (const auto& [from, to] : choices)
                    c.push_back({from, to});
                std::cout << json{{"winner", player_tag(w)}, {"accepted", w == Player::Eve}, {"positions", g.game.size()},
                                  {"strategy", c}}
                                 .dump(2)
                          << '\n';
            } else {
                std::cout << "winner: " << player_tag(w) << '\n' << "positions: " << g.game.size() << '\n';
                for (const auto& [from, to] : choices)
                    std::cout << "  " << from << " -> " << to << '\n';
            }
            return w == Player::Eve ? kTrue : kFalse;
        }
        if (*solve_cmd) {
            auto g = parse_game(read_file(game_file));
            g.check();
            auto sol = solve(g);
            std::vector<std::string> eve, adam;
            for (std::size_t v = 0; v < g.size(); ++v)
                (sol.eve.test(v) ? eve : adam).push_back(g.names[v]);
            Player w = sol.winner(g.initial);
            if (as_json) {
                json j = strategy_json(g, sol);
                std::cout << json{{"eve", eve}, {"adam", adam}, {"initial_winner", player_tag(w)}, {"strategies", j}}.dump(2)
                          << '\n';
            } else {
                std::cout << "Eve:";
                for (const auto& n : eve)
                    std::cout << ' ' << n;
                std::cout << "\nAdam:";
                for (const auto& n : adam)
                    std::cout << ' ' << n;
                std::cout << "\ninitial: " << player_tag(w) << '\n';
                for (std::size_t v = 0; v < g.size(); ++v) {
                    if (sol.eve_strategy(v) != npos)
                        std::cout << "  Eve " << g.names[v] << " -> " << g.names[sol.eve_strategy(v)] << '\n';
                    if (sol.adam_strategy(v) != npos)
                        std::cout << "  Adam " << g.names[v] << " -> " << g.names[sol.adam_strategy(v)] << '\n';
                }
            }
            return w == Player::Eve ? kTrue : kFalse;
        }
        if (*bisim) {
            auto g1 = parse_game(read_file(game_file));
            auto g2 = parse_game(read_file(game_file2));
            g1.check();
            g2.check();
            if (!pairs_file.empty()) {
                auto z = parse_pairs(read_file(pairs_file), g1, g2);
                auto c = check_bisimulation(g1, g2, z);
                if (as_json) {
                    json j{{"ok", c.ok}, {"pairs", z.size()}};
                    if (!c.ok)
                        j.update({{"clause", c.clause},
                                  {"left", g1.names[c.left]},
                                  {"right", g2.names[c.right]},
                                  {"detail", c.detail}});
                    std::cout << j.dump(2) << '\n';
                } else if (c.ok) {
                    std::cout << "ok: " << z.size() << " pairs form a bisimulation\n";
                } else {
                    std::cout << "not a bisimulation: " << c.clause << " fails at (" << g1.names[c.left] << ", "
                              << g2.names[c.right] << "): " << c.detail << '\n';
                }
                return c.ok ? kTrue : kFalse;
            }
            auto z = max_bisimulation(g1, g2);
            bool related = z.count({g1.initial, g2.initial}) > 0;
            if (as_json)
                std::cout << json{{"initial_related", related}, {"pairs", z.size()}, {"relation", write_pairs(z, g1, g2)}}.dump(2)
                          << '\n';
            else
                std::cout << "initial positions " << (related ? "" : "not ") << "bisimilar\n" << write_pairs(z, g1, g2);
            return related ? kTrue : kFalse;
        }
        if (*cex) {
            Jta a = !cex_jta.empty() ? parse_jta(read_file(cex_jta))
                                     : formula_to_jta(parse_mu_formula(cex_formula.empty() ? "mu X. (p | <> X)" : cex_formula));
            ExperimentOptions opts;
            opts.atl.mode = parse_semantics_mode(mode_text);
            opts.atl.include_self = include_self;
            opts.atl.blocking = vacuous ? Blocking::Vacuous : Blocking::Strict;
            opts.max_n = max_n;
            opts.parallel = !serial;
            auto rep = run_experiment(a, opts);
            const auto family = build_family(rep.n);
            if (!emit_trees.empty()) {
                fs::create_directories(emit_trees);
                for (std::size_t i = 0; i < family.size(); ++i)
                    write_text(fs::path(emit_trees) / ("T" + std::to_string(i + 1) + ".tree"), write_structure(family[i]));
                if (rep.collision)
                    write_text(fs::path(emit_trees) / "T0.tree",
                               write_structure(combine_t0(family, rep.collision->first, rep.collision->second)));
            }
            if (!emit_figure.empty() && rep.collision)
                write_text(emit_figure, render_figure(family, rep.collision->first, rep.collision->second));
            if (!emit_games.empty() && rep.collision) {
                auto [i, j] = *rep.collision;
                auto profile = RelationProfile::equal_level({"a"});
                auto t0 = combine_t0(family, i, j);
                auto q0 = build_quotient(t0, profile);
                auto qi = build_quotient(family[i - 1], profile);
                auto qj = build_quotient(family[j - 1], profile);
                auto g0 = family_game(a, q0, rep.n);
                auto gi = family_game(a, qi, rep.n);
                auto gj = family_game(a, qj, rep.n);
                fs::path dir(emit_games);
                fs::create_directories(dir);
                write_text(dir / "g0.game", write_game(g0.game));
                write_text(dir / "gi.game", write_game(gi.game));
                write_text(dir / "gj.game", write_game(gj.game));
                write_text(dir / "z.pairs", write_pairs(transfer_relation(g0, gi, rep.n, i, j, false), g0.game, gi.game));
                write_text(dir / "zprime.pairs",
                           write_pairs(transfer_relation(g0, gj, rep.n, i, j, true), g0.game, gj.game));
            }
            if (as_json) {
                std::cout << rep.to_json().dump(2) << '\n';
            } else {
                std::cout << "N = " << rep.n << " (" << rep.automaton_states << " automaton states)\n";
                for (const auto& t : rep.trees) {
                    std::cout << "T_" << t.index << ": <<a>> F p " << (t.atl_holds ? "holds" : "fails") << ", witness";
                    for (const auto& w : t.witness_levels)
                        std::cout << ' ' << w;
                    std::cout << (t.witness_matches ? " (expected)" : " (unexpected)") << ", "
                              << (t.accepted ? "accepted" : "rejected") << ", visit {";
                    bool first = true;
                    for (auto s : t.visit) {
                        std::cout << (first ? "" : ", ") << a.state_names[s];
                        first = false;
                    }
                    std::cout << "}\n";
                }
                if (rep.collision) {
                    std::cout << "collision: (" << rep.collision->first << ", " << rep.collision->second << ")\n"
                              << "T_0: <<a>> F p " << (rep.t0_atl_holds ? "holds" : "fails") << ", EF p "
                              << (rep.t0_ef_p ? "holds" : "fails") << ", " << (rep.t0_accepted ? "accepted" : "rejected")
                              << '\n'
                              << "Z: " << (rep.z_ok ? "bisimulation" : "fails " + rep.z_detail) << " (" << rep.z_pairs
                              << " pairs)\n"
                              << "Z': " << (rep.z_prime_ok ? "bisimulation" : "fails " + rep.z_prime_detail) << " ("
                              << rep.z_prime_pairs << " pairs)\n"
                              << "exits won in G0: " << (rep.transfer_ok ? "yes" : "no") << '\n'
                              << "sigma0: " << (rep.sigma0_ok ? "winning" : "not winning: " + rep.sigma0_detail) << " ("
                              << rep.sigma0_exits << " exits)\n";
                }
                std::cout << "classification: " << to_string(rep.classification);
                if (rep.classification == Classification::RejectsAModel)
                    std::cout << " (T_" << rep.rejected_index << ")";
                if (!rep.failed_step.empty())
                    std::cout << " (" << rep.failed_step << ")";
                std::cout << '\n';
            }
            return kTrue;
        }
        if (*relsize) {
            auto r = parse_relation(read_file(relation_file));
            std::size_t n = rel_size(r);
            if (as_json)
                std::cout << json{{"size", n}}.dump() << '\n';
            else
                std::cout << n << '\n';
            return kTrue;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}
