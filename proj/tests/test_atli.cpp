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

#include "epimu/atli.hpp"
#include "epimu/expcex.hpp"
#include "epimu/xlate.hpp"

#include "oracles/naive.hpp"
#include "oracles/random.hpp"

#include <catch_amalgamated.hpp>

using namespace epimu;
using namespace epimu::testing;

namespace {

StateSet with_prop(const QuotientSystem& q, const std::string& p)
{
    StateSet s(q.size());
    for (std::size_t x = 0; x < q.size(); ++x)
        if (q.labels[x].count(p))
            s.set(x);
    return s;
}

StateSet everything(const QuotientSystem& q)
{
    StateSet s(q.size());
    s.set();
    return s;
}

/// Profile playing one action per level under the equal-level relation.
Profile by_level(const QuotientSystem& q, const std::vector<std::size_t>& per_level, std::size_t at_inf)
{
    AgentStrategy s{"a", std::vector<std::size_t>(q.size(), 0)};
    for (std::size_t x = 0; x < q.size(); ++x) {
        std::size_t l = q.states[x].level;
        s.action[x] = l == kInfiniteLevel ? at_inf : per_level.at(l);
    }
    return Profile{{s}};
}

std::vector<std::size_t> witness_levels(std::size_t i, unsigned n)
{
    std::vector<std::size_t> w{0, 0};
    for (char c : code_word(i, n))
        w.push_back(c == '0' ? 0 : 1);
    return w;
}

RelationProfile identity_profile(const TreeArena& t)
{
    RelationProfile p;
    for (const auto& a : t.agents) {
        std::vector<std::pair<StateRef, StateRef>> pairs;
        for (const auto& n : t.nodes)
            pairs.push_back({{n.id, std::nullopt, false}, {n.id, std::nullopt, false}});
        p.agents[a] = AgentRelation::explicit_pairs(pairs);
    }
    return p;
}

} // namespace

TEST_CASE("outcomes of the first family member")
{
    const unsigned n = 2;
    auto t1 = build_family(n).front();
    auto q = build_quotient(t1, RelationProfile::equal_level({"a"}));
    ArenaActions arena(q);

    auto all = outcomes_from(q, arena, Profile{}, {q.root});
    CHECK(all.nodes.count() == q.size());

    auto a0 = outcomes_from(q, arena, by_level(q, {0, 0, 0, 0}, 0), {q.root});
    for (std::size_t c : q.children[q.root])
        CHECK(a0.nodes.test(c));
    CHECK(a0.succ[q.root].size() == (std::size_t(1) << n) + 2);

    std::size_t y1 = q.states_of("y1").front();
    auto right = outcomes_from(q, arena, by_level(q, {0, 0, 1, 1}, 0), {y1});
    REQUIRE(right.succ[y1].size() == 1);
    CHECK(q.node_ids[q.states[right.succ[y1].front()].node] == "y1.1");
}

TEST_CASE("objectives")
{
    auto t1 = build_family(2).front();
    auto q = build_quotient(t1, RelationProfile::equal_level({"a"}));
    ArenaActions arena(q);
    auto p = with_prop(q, "p");

    auto x1 = q.states_of("x1").front();
    auto g = outcomes_from(q, arena, by_level(q, {0, 0, 0, 0}, 0), {x1});
    CHECK(check_objective(g, Objective::until(everything(q), p))); // already in the target

    // From y_{2^N+1}, playing a1 below the block root ends in a loop-leaf without p.
    auto y = q.states_of("y5").front();
    auto g2 = outcomes_from(q, arena, by_level(q, {0, 0, 0, 1}, 0), {y});
    CHECK_FALSE(check_objective(g2, Objective::until(everything(q), p)));

    auto none = synthesize_profile(q, {"a"}, Objective::until(everything(q), StateSet(q.size())), {q.root});
    CHECK_FALSE(none);
    auto any = synthesize_profile(q, {"a"}, Objective::next(everything(q)), {q.root});
    REQUIRE(any);
    for (std::size_t act : any->strategies.front().action)
        CHECK(act == 0);
}

TEST_CASE("family members have uniform strategies and T_0 does not")
{
    for (unsigned n : {1u, 2u}) {
        auto family = build_family(n);
        auto goal = parse_atl_formula("<<a>> F p");
        for (std::size_t i = 1; i <= family.size(); ++i) {
            auto q = build_quotient(family[i - 1], RelationProfile::equal_level({"a"}));
            CHECK(eval_atl(q, goal).test(q.root));
            auto prof = synthesize_profile_at(q, {"a"}, Objective::until(everything(q), with_prop(q, "p")), q.root);
            REQUIRE(prof);
            auto expect = by_level(q, witness_levels(i, n), 0);
            CHECK(prof->strategies.front().action == expect.strategies.front().action);
        }
        auto t0 = combine_t0(family, 1, 2);
        auto q0 = build_quotient(t0, RelationProfile::equal_level({"a"}));
        CHECK_FALSE(eval_atl(q0, goal).test(q0.root));
        ArenaActions arena(q0);
        auto g = outcomes_from(q0, arena, by_level(q0, witness_levels(1, n), 0), {q0.root});
        CHECK_FALSE(check_objective(g, Objective::until(everything(q0), with_prop(q0, "p"))));
        // Without the uniformity constraint the goal is reachable.
        CHECK(eval_mu(parse_mu_formula("mu X. (p | <> X)"), q0).test(q0.root));
    }
}

TEST_CASE("synthesized profiles are uniform")
{
    Rng rng(91);
    for (int t = 0; t < 60; ++t) {
        auto arena = random_arena(rng, {"a", "b"}, 3, 2);
        RelationProfile prof;
        prof.agents["a"] = random_agent_relation(rng, arena, {"p"}, pick(rng, 2) ? 0 : 2);
        prof.agents["b"] = AgentRelation::equal_level();
        auto q = build_quotient(arena, prof);
        for (std::size_t x = 0; x < q.size(); ++x) {
            auto p = synthesize_profile_at(q, {"a", "b"}, Objective::until(everything(q), with_prop(q, "p")), x);
            if (!p)
                continue;
            for (const auto& s : p->strategies)
                CHECK(is_uniform(q, s));
        }
    }
}

TEST_CASE("perfect information reduces to the mu-calculus")
{
    Rng rng(92);
    auto ef = parse_mu_formula("mu X. (p | <> X)");
    auto ex = parse_mu_formula("<> p");
    auto ax = parse_mu_formula("[] p");
    auto eu = parse_mu_formula("mu X. (q | (p & <> X))");
    for (int t = 0; t < 80; ++t) {
        auto arena = random_arena(rng, {"a", "b"}, 3, 3, true);
        auto q = build_quotient(arena, identity_profile(arena));
        CHECK(eval_atl(q, parse_atl_formula("<<a,b>> F p")) == eval_mu(ef, q));
        CHECK(eval_atl(q, parse_atl_formula("<<a,b>> X p")) == eval_mu(ex, q));
        CHECK(eval_atl(q, parse_atl_formula("<<>> X p")) == eval_mu(ax, q));
        CHECK(eval_atl(q, parse_atl_formula("<<a,b>> p U q")) == eval_mu(eu, q));
    }
}

TEST_CASE("uniform strategies against enumeration")
{
    Rng rng(93);
    auto has = [](const std::string& p) { return [p](const Label& l) { return l.count(p) > 0; }; };
    auto any = [](const Label&) { return true; };
    AtliOptions uniform;
    uniform.mode = SemanticsMode::UniformOnly;
    for (int t = 0; t < 100; ++t) {
        auto arena = random_arena(rng, t % 2 ? std::vector<std::string>{"a"} : std::vector<std::string>{"a", "b"}, 4, 2);
        RelationProfile prof = RelationProfile::equal_level({arena.agents.begin(), arena.agents.end()});
        auto q = build_quotient(arena, prof);
        CHECK(eval_atl(q, parse_atl_formula("<<a>> F p"), uniform).test(q.root) ==
              naive_uniform_until(arena, "a", any, has("p")));
        CHECK(eval_atl(q, parse_atl_formula("<<a>> q U p"), uniform).test(q.root) ==
              naive_uniform_until(arena, "a", has("q"), has("p")));
    }
}

TEST_CASE("semantics modes are ordered")
{
    Rng rng(94);
    for (int t = 0; t < 60; ++t) {
        auto arena = random_arena(rng, {"a"}, 3, 2);
        RelationProfile prof;
        prof.agents["a"] = random_agent_relation(rng, arena, {"p"}, pick(rng, 2) ? 0 : 2);
        auto q = build_quotient(arena, prof);
        for (const char* text : {"<<a>> F p", "<<a>> X p", "<<a>> q U p"}) {
            auto f = parse_atl_formula(text);
            AtliOptions o;
            o.include_self = true;
            o.mode = SemanticsMode::DeRe;
            auto dr = eval_atl(q, f, o);
            o.mode = SemanticsMode::DeDicto;
            auto dd = eval_atl(q, f, o);
            o.mode = SemanticsMode::UniformOnly;
            auto uo = eval_atl(q, f, o);
            CHECK(dr.is_subset_of(dd));
            CHECK(dd.is_subset_of(uo));
        }
    }
}

TEST_CASE("blocking policies")
{
    // The root offers only a0-children; a profile playing a1 there is blocked.
    TreeArena t;
    t.agents = {"a"};
    t.actions["a"] = {"a0", "a1"};
    t.root = t.add_node("r", 0, {});
    t.add_child(t.root, t.add_node("c", 1, {"p_a0"}, true));
    auto q = build_quotient(t, RelationProfile::equal_level({"a"}));
    ArenaActions arena(q);
    AgentStrategy s{"a", std::vector<std::size_t>(q.size(), 1)};
    auto g = outcomes_from(q, arena, Profile{{s}}, {q.root});
    CHECK(g.blocked.test(q.root));
    auto never = Objective::until(everything(q), StateSet(q.size()));
    CHECK_FALSE(check_objective(g, never, Blocking::Strict));
    CHECK(check_objective(g, never, Blocking::Vacuous));
}

TEST_CASE("mode names")
{
    CHECK(parse_semantics_mode("de-re") == SemanticsMode::DeRe);
    CHECK(parse_semantics_mode("de-dicto") == SemanticsMode::DeDicto);
    CHECK(parse_semantics_mode("uniform-only") == SemanticsMode::UniformOnly);
    CHECK(std::string(to_string(SemanticsMode::DeDicto)) == "de-dicto");
    CHECK_THROWS_AS(parse_semantics_mode("sideways"), ValidationError);
}

TEST_CASE("profiles print one line per class")
{
    auto t1 = build_family(1).front();
    auto q = build_quotient(t1, RelationProfile::equal_level({"a"}));
    auto p = synthesize_profile_at(q, {"a"}, Objective::until(everything(q), with_prop(q, "p")), q.root);
    REQUIRE(p);
    auto text = to_string(*p, q);
    CHECK(text.find("agent a: class {root@0} -> a0") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}
