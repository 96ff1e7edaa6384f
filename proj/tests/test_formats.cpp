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
#include "epimu/formats.hpp"
#include "epimu/xlate.hpp"

#include "oracles/random.hpp"

#include <catch_amalgamated.hpp>

using namespace epimu;
using namespace epimu::testing;

namespace {
std::string data(const std::string& name) { return std::string(EPIMU_DATA_DIR) + "/" + name; }
} // namespace

TEST_CASE("structure files round trip")
{
    for (const auto& t : build_family(1)) {
        auto back = parse_structure(write_structure(t));
        CHECK(write_structure(back) == write_structure(t));
        CHECK(validate_arena(back).empty());
    }
    Rng rng(41);
    for (int i = 0; i < 30; ++i) {
        auto s = random_structure(rng, 3, 3, {"p", "q"}, {"a"});
        CHECK(write_structure(parse_structure(write_structure(s))) == write_structure(s));
    }
}

TEST_CASE("structure file errors name the line")
{
    try {
        parse_structure("node r depth 0 label {}\nnode x depth one label {}\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 2);
    }
    CHECK_THROWS_AS(parse_structure("node r depth 0 label {} children ghost\n"), ParseError);
    CHECK_THROWS_AS(parse_structure("bogus line\n"), ParseError);
}

TEST_CASE("bundled data files parse")
{
    auto chain = parse_structure(read_file(data("chain.tree")));
    CHECK(chain.nodes.size() == 3);
    CHECK(validate(chain).empty());
    auto arena = parse_structure(read_file(data("arena.tree")));
    CHECK(validate_arena(arena).empty());
    auto ef = parse_jta(read_file(data("ef_p.jta")));
    CHECK(ef.num_states() == 1);
    CHECK(ef.colors.front() == 1);
    auto rel = parse_relation(read_file(data("parity.relation")));
    CHECK(rel.pairs.size() == 2);
    auto pairs = parse_explicit_pairs(read_file(data("branch.pairs")));
    CHECK(pairs.size() == 4);
    CHECK_THROWS_AS(read_file(data("missing.file")), ValidationError);
}

TEST_CASE("automata with wildcard transitions")
{
    auto d = parse_dfa("states s t\ninitial s\naccepting t\non {p} s -> t\non * s -> s\non * t -> t\n", {"p"});
    CHECK(d.accepts({0, 1}));
    CHECK_FALSE(d.accepts({0, 0}));
    CHECK_THROWS_AS(parse_dfa("states s\non {p} s -> s\n", {"p"}), ParseError); // letter {} missing
    CHECK_THROWS_AS(parse_dfa("states s\non {r} s -> s\non * s -> s\n", {"p"}), ParseError);
}

TEST_CASE("state references")
{
    auto a = parse_state_ref("x");
    CHECK(a.node == "x");
    CHECK_FALSE(a.level);
    CHECK_FALSE(a.infinite);
    auto b = parse_state_ref("x@3");
    CHECK(b.level == 3u);
    CHECK(parse_state_ref("x@inf").infinite);
}

TEST_CASE("automaton text round trips")
{
    auto a = formula_to_jta(parse_mu_formula("nu Y. (K a <> Y & mu X. (p | [] X))"));
    auto back = parse_jta(to_string(a));
    CHECK(to_string(back) == to_string(a));
    Rng rng(42);
    for (int i = 0; i < 50; ++i) {
        auto r = random_jta(rng, {"p", "q"}, 3, {"a"});
        CHECK(to_string(parse_jta(to_string(r))) == to_string(r));
    }
}

TEST_CASE("automaton parse errors")
{
    CHECK_THROWS_AS(parse_jta("state q color 1\non q * := (<>, r)\n"), ParseError);
    CHECK_THROWS_AS(parse_jta("state q color 1\non q * := (<>, q\n"), ParseError);
    CHECK_THROWS_AS(parse_jta(""), ParseError);
    auto inferred = parse_jta("state q color 0\non q {p} := true\non q {} := (jbox a, q)\n");
    CHECK(inferred.props == std::vector<std::string>{"p"});
    CHECK(inferred.agents() == std::set<std::string>{"a"});
}

TEST_CASE("game files round trip")
{
    auto g = parse_game(read_file(data("small.game")));
    CHECK(g.size() == 4);
    CHECK(write_game(parse_game(write_game(g))) == write_game(g));
    Rng rng(43);
    for (int i = 0; i < 50; ++i) {
        auto r = random_game(rng, 8, 3);
        auto back = parse_game(write_game(r));
        CHECK(back.owner == r.owner);
        CHECK(back.color == r.color);
        CHECK(back.moves == r.moves);
        CHECK(back.declared_winner == r.declared_winner);
    }
    CHECK_THROWS_AS(parse_game("pos a owner X color 0\n"), ParseError);
    CHECK_THROWS_AS(parse_game("pos a owner E color 0 moves b\n"), ParseError);
}

TEST_CASE("pair files")
{
    auto g = parse_game(read_file(data("small.game")));
    auto h = parse_game(read_file(data("small_copy.game")));
    auto z = parse_pairs(read_file(data("small.pairs")), g, h);
    CHECK(z.size() == 4);
    CHECK(parse_pairs(write_pairs(z, g, h), g, h) == z);
    CHECK_THROWS_AS(parse_pairs("v0 nowhere\n", g, h), ParseError);
}
