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
#include "epimu/xlate.hpp"

#include "oracles/naive.hpp"
#include "oracles/random.hpp"

#include <catch_amalgamated.hpp>

#include <cstdlib>

using namespace epimu;
using namespace epimu::testing;

namespace {

LeveledStructure chain()
{
    LeveledStructure s;
    s.agents = {"a"};
    s.root = s.add_node("n0", 0, {});
    auto n1 = s.add_node("n1", 1, {});
    auto n2 = s.add_node("n2", 2, {"p"}, true);
    s.add_child(s.root, n1);
    s.add_child(n1, n2);
    return s;
}

std::uint32_t bits(const StateSet& s)
{
    std::uint32_t out = 0;
    for (std::size_t x = 0; x < s.size(); ++x)
        if (s.test(x))
            out |= 1u << x;
    return out;
}

struct Instance
{
    LeveledStructure s;
    RelationProfile prof;
    QuotientSystem q;
};

/// Random structure and profile with a small quotient.
Instance random_instance(Rng& rng, const std::vector<std::string>& agents, std::size_t max_states)
{
    for (;;) {
        Instance in;
        in.s = random_structure(rng, 3, 2, {"p", "q"}, agents);
        for (const auto& a : agents)
            in.prof.agents[a] = random_agent_relation(rng, in.s, {"p"}, static_cast<int>(pick(rng, 3)));
        in.q = build_quotient(in.s, in.prof);
        if (in.q.size() <= max_states)
            return in;
    }
}

} // namespace

TEST_CASE("evaluation of basic formulas")
{
    auto s = chain();
    auto q = build_quotient(s, RelationProfile::equal_level({"a"}));
    REQUIRE(q.size() == 3);
    auto p = eval_mu(parse_mu_formula("p"), q);
    CHECK(p.count() == 1);
    CHECK(p.test(q.states_of("n2").front()));
    CHECK(eval_mu(parse_mu_formula("mu X. X"), q).none());
    CHECK(eval_mu(parse_mu_formula("nu X. X"), q).all());
    CHECK(eval_mu(parse_mu_formula("mu X. (p | <> X)"), q).count() == 3);
    CHECK(eval_mu(parse_mu_formula("<> <> p"), q).test(q.root));
    CHECK(eval_mu(parse_mu_formula("K a p"), q).count() == 1);
    CHECK_THROWS_AS(eval_mu(parse_mu_formula("X"), q), ValidationError);
    Valuation v{{"X", p}};
    CHECK(eval_mu(parse_mu_formula("X"), q, v) == p);
}

TEST_CASE("evaluation agrees with the subset oracle")
{
    Rng rng(71);
    for (int t = 0; t < 150; ++t) {
        auto in = random_instance(rng, {"a"}, 6);
        auto f = random_guarded_sentence(rng, 6, {"p", "q"}, {"a"});
        SubsetEvaluator oracle(in.q.as_transition_system(), in.q.agents);
        std::map<std::string, std::uint32_t> env;
        INFO(to_string(f));
        CHECK(bits(eval_mu(f, in.q)) == oracle.eval(f, env));
    }
}

TEST_CASE("Kleene iteration converges quickly")
{
    Rng rng(72);
    for (int t = 0; t < 100; ++t) {
        auto in = random_instance(rng, {"a"}, 8);
        auto f = random_guarded_sentence(rng, 6, {"p", "q"}, {"a"});
        eval_mu(f, in.q);
        CHECK(last_max_kleene_rounds() <= in.q.size() + 1);
    }
}

TEST_CASE("bodies are monotone in their variable")
{
    Rng rng(73);
    for (int t = 0; t < 100; ++t) {
        auto in = random_instance(rng, {"a"}, 8);
        std::vector<std::string> scope{"Z"};
        int fresh = 0;
        auto body = random_nnf(rng, 5, {"p", "q"}, {"a"}, scope, fresh);
        if (free_variables(body) != std::set<std::string>{"Z"})
            continue;
        StateSet small(in.q.size()), big(in.q.size());
        for (std::size_t x = 0; x < in.q.size(); ++x) {
            bool b = coin(rng);
            big[x] = b;
            small[x] = b && coin(rng);
        }
        auto lo = eval_mu(body, in.q, {{"Z", small}});
        auto hi = eval_mu(body, in.q, {{"Z", big}});
        CHECK(lo.is_subset_of(hi));
    }
}

TEST_CASE("translation of small formulas")
{
    auto p = formula_to_jta(parse_mu_formula("p"));
    REQUIRE(p.num_states() == 1);
    CHECK(p.transition(0, {"p"})->kind == BoolKind::True);
    CHECK(p.transition(0, {})->kind == BoolKind::False);

    auto k = formula_to_jta(parse_mu_formula("K a p"));
    const auto& d = k.transition(k.initial, {});
    REQUIRE(d->kind == BoolKind::Atom);
    CHECK(d->dir == Dir::JumpBox);
    CHECK(d->agent == "a");
    CHECK(k.transition(d->state, {"p"})->kind == BoolKind::True);
    CHECK(k.transition(d->state, {})->kind == BoolKind::False);

    CHECK_THROWS_AS(formula_to_jta(parse_mu_formula("mu X. (p | X)")), ValidationError);
    CHECK_THROWS_AS(formula_to_jta(parse_mu_formula("<> X")), ValidationError);
}

TEST_CASE("translated automata accept exactly the models")
{
    Rng rng(74);
    int done = 0;
    for (int t = 0; t < 150; ++t) {
        auto in = random_instance(rng, {"a", "b"}, 8);
        auto f = random_guarded_sentence(rng, 6, {"p", "q"}, {"a", "b"});
        auto a = formula_to_jta(f);
        INFO(to_string(f) << "\n" << to_string(a));
        CHECK(eval_mu(f, in.q).test(in.q.root) == accepts(a, in.s, in.prof));
        ++done;
    }
    CHECK(done == 150);
}

TEST_CASE("EF p agrees with evaluation on random structures")
{
    Rng rng(75);
    auto f = parse_mu_formula("mu X. (p | <> X)");
    auto a = formula_to_jta(f);
    for (int t = 0; t < 100; ++t) {
        auto in = random_instance(rng, {"a"}, 8);
        CHECK(eval_mu(f, in.q).test(in.q.root) == accepts(a, in.s, in.prof));
    }
}

TEST_CASE("translation size grows linearly")
{
    Rng rng(76);
    double worst = 0;
    for (int t = 0; t < 300; ++t) {
        auto f = random_guarded_sentence(rng, 10, {"p", "q"}, {"a"});
        auto a = formula_to_jta(f);
        worst = std::max(worst, double(a.size()) / double(formula_size(f)));
    }
    CHECK(worst <= 4.0);
}

TEST_CASE("equation systems of small automata")
{
    Jta t;
    t.props = {"p"};
    t.state_names = {"q0"};
    t.colors = {3};
    t.delta = {{bp::top(), bp::top()}};
    auto e = jta_to_equations(t);
    REQUIRE(e.equations.size() == 1);
    CHECK(e.equations[0].rhs->kind == MuKind::True);
    CHECK(e.equations[0].least);

    Jta ag;
    ag.props = {"p"};
    ag.state_names = {"q0"};
    ag.colors = {0};
    ag.delta = {{bp::bottom(), bp::atom(Dir::Box, 0)}};
    auto eg = jta_to_equations(ag);
    CHECK_FALSE(eg.equations[0].least);
    auto flat = flatten(eg);
    Rng rng(77);
    auto ref = parse_mu_formula("nu X. (p & [] X)");
    for (int i = 0; i < 50; ++i) {
        auto in = random_instance(rng, {"a"}, 8);
        CHECK(eval_mu(flat, in.q) == eval_mu(ref, in.q));
        CHECK(eval_equations(eg, in.q) == eval_mu(ref, in.q));
    }
}

TEST_CASE("flattening")
{
    EquationSystem one{{{"X", true, parse_mu_formula("p | <> X")}}, "X"};
    CHECK(alpha_equivalent(flatten(one), parse_mu_formula("mu X. (p | <> X)")));

    EquationSystem two{{{"X", true, parse_mu_formula("p | <> Y")}, {"Y", false, parse_mu_formula("q & [] Y")}}, "X"};
    auto flat = flatten(two);
    CHECK(free_variables(flat).empty());
    Rng rng(78);
    auto ref = parse_mu_formula("p | <> nu Y. (q & [] Y)");
    for (int i = 0; i < 50; ++i) {
        auto in = random_instance(rng, {"a"}, 8);
        CHECK(eval_mu(flat, in.q) == eval_mu(ref, in.q));
        CHECK(eval_equations(two, in.q) == eval_mu(ref, in.q));
    }
    CHECK_THROWS_AS(flatten(two, 3), FlattenCapExceeded);
}

TEST_CASE("flatten cap from the environment")
{
    ::unsetenv("KMU_FLATTEN_CAP");
    CHECK(flatten_cap_from_env() == 100000);
    ::setenv("KMU_FLATTEN_CAP", "42", 1);
    CHECK(flatten_cap_from_env() == 42);
    ::unsetenv("KMU_FLATTEN_CAP");
}

TEST_CASE("automata and their equation systems agree")
{
    Rng rng(79);
    for (int t = 0; t < 120; ++t) {
        auto a = random_jta(rng, {"p"}, 3, {"a"});
        auto in = random_instance(rng, {"a"}, 8);
        auto e = jta_to_equations(a);
        INFO(to_string(a));
        CHECK(accepts(a, in.s, in.prof) == eval_equations(e, in.q).test(in.q.root));
        auto flat = flatten(e);
        CHECK(eval_mu(flat, in.q) == eval_equations(e, in.q));
    }
}

TEST_CASE("round trip through automaton and equations")
{
    Rng rng(80);
    for (int t = 0; t < 80; ++t) {
        auto f = random_guarded_sentence(rng, 6, {"p"}, {"a"});
        auto in = random_instance(rng, {"a"}, 8);
        auto e = jta_to_equations(formula_to_jta(f));
        CHECK(eval_equations(e, in.q).test(in.q.root) == eval_mu(f, in.q).test(in.q.root));
    }
    auto ef = parse_jta(read_file(std::string(EPIMU_DATA_DIR) + "/ef_p.jta"));
    auto flat = flatten(jta_to_equations(ef));
    auto ref = parse_mu_formula("mu X. (p | <> X)");
    for (int t = 0; t < 50; ++t) {
        auto in = random_instance(rng, {"a"}, 8);
        CHECK(eval_mu(flat, in.q) == eval_mu(ref, in.q));
    }
}

TEST_CASE("restricting the letters")
{
    auto a = formula_to_jta(parse_mu_formula("nu Y. (mu X. (p | <> X) & [] Y)"));
    auto full = jta_to_equations(a);
    auto both = jta_to_equations(a, std::vector<Label>{{}, {"p"}});
    auto q = build_quotient(chain(), RelationProfile::equal_level({"a"}));
    CHECK(eval_equations(both, q) == eval_equations(full, q));
    // Expanding only the empty letter drops every clause that needs p.
    auto none = jta_to_equations(a, std::vector<Label>{{}});
    CHECK(eval_equations(none, q).none());
}
