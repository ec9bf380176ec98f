// Copyright 2026 The fscalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "fscalc/embed.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

namespace fscalc {
namespace {

using testing::Gen;

SpaceParam P(const char* t) { return parse_space(t); }

SpaceParam random_space(Gen& g, Scale sc) {
    Rat lam = g.rational(Rat(1, 16), Rat(3), 8);
    Rat mu = g.pick(std::vector<Rat>{Rat(0), Rat(1, 4), Rat(1, 2), Rat(1)});
    return testing::sp(sc, g.rational(Rat(-2), Rat(4), 8), lam, mu);
}

// A random derivable successor of x: one rule move with random magnitude.
SpaceParam random_move(Gen& g, const SpaceParam& x, int n) {
    Rat d = g.rational(Rat(0), Rat(2), 8);
    Rat mu = g.coin() ? x.mu() : min(x.mu(), g.rational(Rat(0), Rat(1), 4));
    switch (g.integer(0, 2)) {
        case 0: return testing::sp(x.scale, x.s - d, x.lam(), d.sign() > 0 ? g.rational(Rat(0), Rat(1), 4) : mu);
        case 1: {
            Rat dl = min(d, x.lam() * Rat(n) - Rat(1, 16)) / Rat(n);
            if (dl.sign() <= 0) return x;
            return testing::sp(x.scale, x.s - dl * Rat(n), x.lam() - dl, mu);
        }
        default: return testing::sp(x.scale, x.s, x.lam() + d, mu);
    }
}

TEST(Embeds, Examples) {
    auto c3 = DomainCtx::make(3);
    auto v = embeds(P("F:3,3,2"), P("F:2,2,2"), c3);
    EXPECT_TRUE(v.holds);
    EXPECT_EQ(v.rule, EmbedRule::composite);
    EXPECT_FALSE(embeds(P("F:2,2,2"), P("F:2,2,1"), c3).holds);
    EXPECT_FALSE(embeds(P("F:2,2,2"), P("F:2,2,1"), c3).rule.has_value());
    auto id = embeds(P("F:7/3,5,3"), P("F:7/3,5,3"), c3);
    EXPECT_TRUE(id.holds);
    EXPECT_EQ(id.rule, EmbedRule::identical);
}

TEST(Embeds, RuleTags) {
    auto c3 = DomainCtx::make(3);
    EXPECT_EQ(embeds(P("F:2,2,4"), P("F:1,2,1"), c3).rule, EmbedRule::same_p_higher_s);
    EXPECT_EQ(embeds(P("F:2,2,1"), P("F:2,2,4"), c3).rule, EmbedRule::same_p_same_s_q_monotone);
    EXPECT_EQ(embeds(P("F:2,2,2"), P("F:1,6,2"), c3).rule, EmbedRule::sobolev_slope_1);
    EXPECT_EQ(embeds(P("F:2,4,2"), P("F:2,2,2"), c3).rule, EmbedRule::finite_measure_right);
}

TEST(Embeds, LimitingCases) {
    auto c3 = DomainCtx::make(3);
    // equal Sobolev index: any q on the F-scale, q must grow on the B-scale
    EXPECT_TRUE(embeds(P("F:2,2,4"), P("F:1,6,1"), c3).holds);
    EXPECT_FALSE(embeds(P("B:2,2,4"), P("B:1,6,1"), c3).holds);
    EXPECT_TRUE(embeds(P("B:2,2,1"), P("B:1,6,4"), c3).holds);
    EXPECT_FALSE(embeds(P("B:2,2,1"), P("B:1,6,4"), c3).strictness_note.empty());
}

TEST(Embeds, Errors) {
    auto c3 = DomainCtx::make(3);
    EXPECT_THROW(embeds(P("F:1,2,2"), P("B:1,2,2"), c3), std::invalid_argument);
    EXPECT_THROW(embeds(P("B:1,2,2@bd"), P("B:1,2,2"), c3), std::invalid_argument);
}

TEST(Embeds, MatchesCompositionOracle) {
    Gen g;
    for (int i = 0; i < 20000; ++i) {
        int n = static_cast<int>(g.integer(2, 4));
        Scale sc = g.coin() ? Scale::B : Scale::F;
        auto a = random_space(g, sc);
        auto b = g.coin() ? random_move(g, random_move(g, a, n), n) : random_space(g, sc);
        EXPECT_EQ(embeds(a, b, DomainCtx::make(n)).holds, testing::embeds_by_composition(a, b, n))
            << a << " -> " << b << " n=" << n;
    }
}

TEST(Embeds, ReflexiveAndTransitive) {
    Gen g;
    int chains = 0;
    for (int i = 0; i < 10000; ++i) {
        int n = static_cast<int>(g.integer(2, 4));
        auto ctx = DomainCtx::make(n);
        Scale sc = g.coin() ? Scale::B : Scale::F;
        auto a = random_space(g, sc);
        EXPECT_TRUE(embeds(a, a, ctx).holds);
        auto b = g.coin(0.8) ? random_move(g, a, n) : random_space(g, sc);
        auto c = g.coin(0.8) ? random_move(g, b, n) : random_space(g, sc);
        if (embeds(a, b, ctx).holds && embeds(b, c, ctx).holds) {
            ++chains;
            EXPECT_TRUE(embeds(a, c, ctx).holds) << a << " -> " << b << " -> " << c;
        }
    }
    EXPECT_GT(chains, 1000);
}

TEST(Join, Examples) {
    auto c2 = DomainCtx::make(2), c3 = DomainCtx::make(3);
    EXPECT_EQ(join(P("F:2,2,2"), P("F:3,3,2"), c3).space, P("F:2,2,2"));
    EXPECT_EQ(join(P("F:1,2,2"), P("F:1,2,1"), c2).space, P("F:1,2,2"));
    EXPECT_EQ(join(P("F:5/2,2,2"), P("F:2,6,2"), c3).space, P("F:2,3,2"));
    EXPECT_FALSE(join(P("F:5/2,2,2"), P("F:2,6,2"), c3).clamped);
    EXPECT_THROW(join(P("F:1,2,2"), P("B:1,2,2"), c3), std::invalid_argument);
}

TEST(Join, LawsOnRandomPairs) {
    Gen g;
    for (int i = 0; i < 10000; ++i) {
        int n = static_cast<int>(g.integer(2, 4));
        auto ctx = DomainCtx::make(n);
        Scale sc = g.coin() ? Scale::B : Scale::F;
        auto a = random_space(g, sc), b = random_space(g, sc);
        auto j = join(a, b, ctx);
        EXPECT_FALSE(j.clamped);
        EXPECT_TRUE(embeds(a, j.space, ctx).holds) << a << " v " << b << " = " << j.space;
        EXPECT_TRUE(embeds(b, j.space, ctx).holds) << a << " v " << b << " = " << j.space;
        EXPECT_EQ(j.space, join(b, a, ctx).space);
        EXPECT_EQ(join(a, a, ctx).space, a);
        if (embeds(a, b, ctx).holds) {
            EXPECT_EQ(j.space, b);
        }
    }
}

// No grid space strictly below the join receives both inputs.
TEST(Join, GridMinimality) {
    Gen g;
    const Rat step(1, 16);
    std::vector<Rat> mus{Rat(0), Rat(1, 4), Rat(1, 2), Rat(1)};
    for (int i = 0; i < 40; ++i) {
        int n = static_cast<int>(g.integer(2, 3));
        auto ctx = DomainCtx::make(n);
        Scale sc = g.coin() ? Scale::B : Scale::F;
        auto draw = [&] {
            Rat s = g.grid(Rat(1), Rat(4), step);
            Rat np = g.grid(Rat(1, 16), min(s, Rat(6)), step);
            return testing::sp(sc, s, np / Rat(n), g.pick(mus));
        };
        auto a = draw(), b = draw();
        auto j = join(a, b, ctx).space;
        for (Rat s(0); s <= Rat(4); s += step)
            for (Rat np = sc == Scale::F ? step : Rat(0); np <= Rat(6); np += step)
                for (const auto& mu : mus) {
                    auto c = testing::sp(sc, s, np / Rat(n), mu);
                    if (c == j || !embeds(c, j, ctx).holds) continue;
                    EXPECT_FALSE(embeds(a, c, ctx).holds && embeds(b, c, ctx).holds)
                        << a << " v " << b << " = " << j << " but " << c << " is below";
                }
    }
}

}  // namespace
}  // namespace fscalc
