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
#include "epimu/games.hpp"
#include "epimu/worlds.hpp"

#include "oracles/naive.hpp"
#include "oracles/random.hpp"

#include <catch_amalgamated.hpp>

using namespace epimu;
using namespace epimu::testing;

namespace {

bool has_clause(const std::vector<Diagnostic>& ds, const std::string& clause)
{
    for (const auto& d : ds)
        if (d.clause == clause)
            return true;
    return false;
}

TreeArena two_leaf_arena()
{
    TreeArena t;
    t.agents = {"a"};
    t.actions["a"] = {"a0", "a1"};
    t.root = t.add_node("r", 0, {});
    t.add_child(t.root, t.add_node("l", 1, {"p_a0"}, true));
    t.add_child(t.root, t.add_node("m", 1, {"p_a1"}, true));
    return t;
}

/// Automaton over one letter-bit accepting words whose last letter is `bit`.
Dfa ends_with(bool bit)
{
    Dfa d;
    d.num_letters = 2;
    d.num_states = 2;
    d.initial = 0;
    d.accepting = {false, true};
    d.delta = bit ? std::vector<std::size_t>{0, 1, 0, 1} : std::vector<std::size_t>{1, 0, 1, 0};
    return d;
}

/// Automaton accepting exactly one word.
Dfa single_word(std::size_t letters, const std::vector<std::size_t>& w)
{
    Dfa d;
    d.num_letters = letters;
    d.num_states = w.size() + 2; // positions plus a sink
    d.initial = 0;
    d.accepting.assign(d.num_states, false);
    d.accepting[w.size()] = true;
    std::size_t sink = w.size() + 1;
    d.delta.assign(d.num_states * letters, sink);
    for (std::size_t i = 0; i < w.size(); ++i)
        d.delta[i * letters + w[i]] = i + 1;
    return d;
}

} // namespace

TEST_CASE("validation of structures")
{
    LeveledStructure s;
    s.root = s.add_node("r", 0, {});
    auto a = s.add_node("a", 1, {});
    s.add_child(s.root, a);
    auto ds = validate(s);
    CHECK(has_clause(ds, "totality")); // a is neither a loop-leaf nor has children

    s.nodes[a].loop = true;
    CHECK(validate(s).empty());

    auto b = s.add_node("b", 3, {}, true);
    s.add_child(s.root, b);
    CHECK(has_clause(validate(s), "edge-depth"));

    LeveledStructure u;
    u.root = u.add_node("r", 0, {}, true);
    u.add_node("lost", 1, {}, true);
    CHECK(has_clause(validate(u), "reachable"));
    CHECK_THROWS_AS(u.add_node("r", 2, {}), ValidationError);
}

TEST_CASE("tree-arena clauses")
{
    auto t = two_leaf_arena();
    CHECK(validate_arena(t).empty());

    auto root_bad = t;
    root_bad.nodes[root_bad.root].label.insert("p_a0");
    CHECK(has_clause(validate_arena(root_bad), "root-action"));

    auto two = t;
    two.nodes[1].label.insert("p_a1");
    CHECK(has_clause(validate_arena(two), "action-singleton"));

    for (const auto& ti : build_family(2))
        CHECK(validate_arena(ti).empty());
    CHECK(action_propositions(t) == std::vector<std::string>{"p_a0", "p_a1"});
}

TEST_CASE("unfolding prefixes")
{
    LeveledStructure s;
    s.root = s.add_node("r", 0, {"p"}, true);
    auto t = unfold_prefix(s, 2);
    REQUIRE(t.nodes.size() == 3);
    for (const auto& n : t.nodes)
        CHECK(n.label == Label{"p"});
    CHECK(t.word(2).size() == 3);

    auto t1 = build_family(1).front();
    CHECK(unfold_prefix(t1, 3).nodes.size() == 1 + 4 + 4 + 8);
    // At the structure's own depth the prefix is its tree part.
    CHECK(unfold_prefix(t1, t1.max_depth()).nodes.size() == t1.nodes.size());
}

TEST_CASE("equal-level quotient of a root with two leaves")
{
    auto t = two_leaf_arena();
    auto q = build_quotient(t, RelationProfile::equal_level({"a"}));
    REQUIRE(q.size() == 3);
    std::size_t l = q.states_of("l").front(), m = q.states_of("m").front();
    CHECK(q.states[l].level == kInfiniteLevel);
    std::size_t a = q.agent_index("a");
    CHECK(q.related(a, l, m));
    CHECK(q.related(a, m, l));
    CHECK_FALSE(q.related(a, q.root, l));
    CHECK(q.name(l) == "l@inf");
}

TEST_CASE("equal-level classes on the first family member")
{
    auto t1 = build_family(1).front();
    auto q = build_quotient(t1, RelationProfile::equal_level({"a"}));
    std::map<std::size_t, std::size_t> per_level;
    for (const auto& s : q.states)
        ++per_level[s.level];
    CHECK(per_level[0] == 1);
    CHECK(per_level[1] == 4);
    CHECK(per_level[2] == 4);
    CHECK(per_level[kInfiniteLevel] == 8);
    std::size_t a = q.agent_index("a");
    for (std::size_t x = 0; x < q.size(); ++x)
        for (std::size_t y = 0; y < q.size(); ++y)
            CHECK(q.related(a, x, y) == (q.states[x].level == q.states[y].level));
}

TEST_CASE("the total recognizable relation relates everything")
{
    RecognizableRelation r;
    r.props = {"p"};
    r.pairs.emplace_back(universal_dfa(2), universal_dfa(2));
    Rng rng(31);
    auto s = random_structure(rng, 3, 2, {"p"}, {"a"});
    RelationProfile prof;
    prof.agents["a"] = AgentRelation::recognizable_relation(r);
    auto q = build_quotient(s, prof);
    for (std::size_t x = 0; x < q.size(); ++x)
        for (std::size_t y = 0; y < q.size(); ++y)
            CHECK(q.related(0, x, y));
}

TEST_CASE("relate on hand-built automata")
{
    RecognizableRelation none;
    none.props = {"p"};
    CHECK_FALSE(relate(none, {{"p"}}, {{"p"}}));

    RecognizableRelation all = none;
    all.pairs.emplace_back(universal_dfa(2), universal_dfa(2));
    CHECK(relate(all, {}, {{"p"}, {}}));

    RecognizableRelation ends = none;
    ends.pairs.emplace_back(ends_with(true), ends_with(false));
    LabelWord pp{{"p"}, {"p"}}, pe{{"p"}, {}};
    CHECK(relate(ends, pp, pe));
    CHECK_FALSE(relate(ends, pe, pp));
}

TEST_CASE("relate agrees with running the automata")
{
    Rng rng(32);
    auto r = random_relation(rng, {"p", "q"}, 3, 3);
    auto word = [&] {
        LabelWord w;
        std::size_t len = pick(rng, 7);
        for (std::size_t i = 0; i < len; ++i) {
            Label l;
            if (coin(rng))
                l.insert("p");
            if (coin(rng))
                l.insert("q");
            w.push_back(l);
        }
        return w;
    };
    for (int t = 0; t < 1000; ++t) {
        auto w = word(), v = word();
        bool expect = false;
        for (const auto& [l, rt] : r.pairs)
            expect = expect || (l.accepts(r.letters(w)) && rt.accepts(r.letters(v)));
        CHECK(relate(r, w, v) == expect);
    }
}

TEST_CASE("relation size against table filling")
{
    RecognizableRelation empty;
    CHECK(rel_size(empty) == 1);
    CHECK(naive_rel_size(empty) == 1);

    RecognizableRelation total;
    total.pairs.emplace_back(universal_dfa(1), universal_dfa(1));
    CHECK(rel_size(total) == naive_rel_size(total));

    RecognizableRelation words;
    words.props = {"p"};
    words.pairs.emplace_back(single_word(2, {1}), single_word(2, {0, 0}));
    words.pairs.emplace_back(single_word(2, {0}), single_word(2, {1}));
    CHECK(rel_size(words) == naive_rel_size(words));

    Rng rng(33);
    for (int t = 0; t < 150; ++t) {
        auto r = random_relation(rng, pick(rng, 2) ? std::vector<std::string>{"p"} : std::vector<std::string>{}, 3, 3);
        CHECK(rel_size(r) == naive_rel_size(r));
    }
}

TEST_CASE("explicit relations")
{
    LeveledStructure s;
    s.agents = {"a"};
    s.root = s.add_node("r", 0, {});
    auto x = s.add_node("x", 1, {"p"}, true);
    auto y = s.add_node("y", 1, {}, true);
    s.add_child(s.root, x);
    s.add_child(s.root, y);
    RelationProfile prof;
    prof.agents["a"] = AgentRelation::explicit_pairs({{{"x", std::nullopt, false}, {"y", std::nullopt, true}}});
    auto q = build_quotient(s, prof);
    std::size_t qx = q.states_of("x").front(), qy = q.states_of("y").front();
    CHECK(q.related(0, qx, qy));
    CHECK_FALSE(q.related(0, qy, qx));

    RelationProfile dangling;
    dangling.agents["a"] = AgentRelation::explicit_pairs({{{"x", std::nullopt, false}, {"nowhere", std::nullopt, false}}});
    CHECK_THROWS_AS(build_quotient(s, dangling), ValidationError);
}

TEST_CASE("quotients are deterministic")
{
    Rng rng(34);
    for (int t = 0; t < 50; ++t) {
        auto s = random_structure(rng, 3, 2, {"p"}, {"a"});
        RelationProfile prof;
        prof.agents["a"] = random_agent_relation(rng, s, {"p"}, static_cast<int>(pick(rng, 3)));
        auto q1 = build_quotient(s, prof), q2 = build_quotient(s, prof);
        REQUIRE(q1.size() == q2.size());
        for (std::size_t x = 0; x < q1.size(); ++x) {
            CHECK(q1.name(x) == q2.name(x));
            CHECK(q1.children[x] == q2.children[x]);
        }
        CHECK(q1.jumps == q2.jumps);
    }
}

TEST_CASE("quotient and unfolding are bisimilar")
{
    Rng rng(35);
    for (int t = 0; t < 60; ++t) {
        auto s = random_structure(rng, 3, 2, {"p", "q"}, {"a"});
        RelationProfile prof;
        prof.agents["a"] = random_agent_relation(rng, s, {"p"}, pick(rng, 2) ? 0 : 2);
        auto q = build_quotient(s, prof);
        auto prefix = unfold_prefix(s, q.max_depth + 3);
        auto ts = annotate_prefix(prefix, s, prof, q);
        auto z = max_bisimulation(ts, q.as_transition_system());
        CHECK(z.count({0, q.root}) == 1);
    }
}

TEST_CASE("equal-level jumps are equality of level")
{
    Rng rng(36);
    for (int t = 0; t < 50; ++t) {
        auto s = random_structure(rng, 4, 3, {"p"}, {"a"});
        auto q = build_quotient(s, RelationProfile::equal_level({"a"}));
        for (std::size_t x = 0; x < q.size(); ++x)
            for (std::size_t y = 0; y < q.size(); ++y)
                if (q.states[x].level != kInfiniteLevel && q.states[y].level != kInfiniteLevel)
                    CHECK(q.related(0, x, y) == (q.states[x].level == q.states[y].level));
    }
}
