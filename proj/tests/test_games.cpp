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

#include "epimu/games.hpp"

#include "oracles/random.hpp"

#include <catch_amalgamated.hpp>

using namespace epimu;
using namespace epimu::testing;

namespace {

ParityGame loop(Player owner, unsigned color)
{
    ParityGame g;
    auto v = g.add_position(owner, color);
    g.add_move(v, v);
    return g;
}

/// Eve at v0 (colour 1) may stay or move to v1 (colour 0, self-loop).
ParityGame escape()
{
    ParityGame g;
    auto v0 = g.add_position(Player::Eve, 1, "v0");
    auto v1 = g.add_position(Player::Eve, 0, "v1");
    g.add_move(v0, v0);
    g.add_move(v0, v1);
    g.add_move(v1, v1);
    return g;
}

} // namespace

TEST_CASE("single-position games")
{
    auto e = solve(loop(Player::Eve, 0));
    CHECK(e.winner(0) == Player::Eve);
    auto a = solve(loop(Player::Adam, 1));
    CHECK(a.winner(0) == Player::Adam);
}

TEST_CASE("Eve escapes an odd self-loop")
{
    auto g = escape();
    auto s = solve(g);
    CHECK(s.winner(0) == Player::Eve);
    CHECK(s.eve_strategy(0) == 1);
    CHECK(verify_strategy(g, s.eve_strategy, 0));

    PositionalStrategy stay{{0, 1}};
    auto bad = verify_strategy(g, stay, 0);
    CHECK_FALSE(bad.winning);
    CHECK_FALSE(bad.diagnostic.empty());
}

TEST_CASE("terminals are lost by their owner unless declared")
{
    ParityGame g;
    auto v = g.add_position(Player::Eve, 0);
    CHECK(g.terminal_winner(v) == Player::Adam);
    CHECK(solve(g).winner(v) == Player::Adam);
    g.set_terminal(v, Player::Eve);
    CHECK(solve(g).winner(v) == Player::Eve);
}

TEST_CASE("finite-memory strategies")
{
    // Eve must alternate between two even cycles; any positional choice wins
    // as well, but the memory version exercises the product construction.
    auto g = escape();
    FiniteMemoryStrategy s;
    s.memory_size = 2;
    s.update = [](std::size_t m, std::size_t to) { return to == 1 ? 1 : m; };
    s.choose = [](std::size_t m, std::size_t v) -> std::size_t { return m == 0 && v == 0 ? 1 : v; };
    CHECK(verify_strategy(g, s, 0));
    s.choose = [](std::size_t, std::size_t) -> std::size_t { return 0; };
    CHECK_FALSE(verify_strategy(g, s, 0));
    s.choose = [](std::size_t, std::size_t) -> std::size_t { return npos; };
    CHECK_FALSE(verify_strategy(g, s, 0));
}

TEST_CASE("illegal strategy moves are reported")
{
    ParityGame g;
    auto v0 = g.add_position(Player::Eve, 0);
    auto v1 = g.add_position(Player::Eve, 0);
    g.add_move(v0, v0);
    g.add_move(v1, v1);
    PositionalStrategy s{{v1, v1}};
    CHECK_FALSE(verify_strategy(g, s, v0));
}

TEST_CASE("bisimulation clauses")
{
    auto g = escape();
    PairSet id{{0, 0}, {1, 1}};
    CHECK(check_bisimulation(g, g, id));

    auto a = loop(Player::Eve, 0), b = loop(Player::Eve, 1);
    auto c = check_bisimulation(a, b, {{0, 0}});
    CHECK_FALSE(c.ok);
    CHECK(c.clause == "colour harmony");
    CHECK(max_bisimulation(a, b).empty());

    auto z = max_bisimulation(g, g);
    CHECK(z.count({0, 0}) == 1);
    CHECK(z.count({1, 1}) == 1);
}

TEST_CASE("solve partitions the positions and agrees with enumeration")
{
    Rng rng(51);
    for (int t = 0; t < 300; ++t) {
        auto g = random_game(rng, 8, 3);
        auto s = solve(g);
        CHECK((s.eve & s.adam).none());
        CHECK((s.eve | s.adam).count() == g.size());
        for (std::size_t v = 0; v < g.size(); ++v) {
            CHECK(brute_force_winner(g, v) == s.winner(v));
            CHECK(verify_strategy(g, s.winner(v) == Player::Eve ? s.eve_strategy : s.adam_strategy, v, s.winner(v)));
        }
    }
}

TEST_CASE("bisimilar positions have the same winner")
{
    Rng rng(52);
    for (int t = 0; t < 150; ++t) {
        auto g = random_game(rng, 6, 3);
        auto h = t % 2 ? inflate_game(rng, g) : random_game(rng, 6, 3);
        auto z = max_bisimulation(g, h);
        CHECK(check_bisimulation(g, h, z));
        auto sg = solve(g), sh = solve(h);
        for (auto [v, w] : z)
            CHECK(sg.winner(v) == sh.winner(w));
    }
}

TEST_CASE("brute force refuses large games")
{
    ParityGame g;
    for (int i = 0; i < 11; ++i)
        g.add_move(g.add_position(Player::Eve, 0), 0);
    CHECK_THROWS_AS(brute_force_winner(g, 0), ValidationError);
}
