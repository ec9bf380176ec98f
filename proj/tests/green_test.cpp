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


#include "fscalc/green.hpp"
#include "fscalc/product.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

namespace fscalc {
namespace {

using testing::Gen;
using testing::F;

SpaceParam P(const char* t) { return parse_space(t); }

TEST(Catalog, Entries) {
    EXPECT_EQ(find_operator("R_N").order, -2);
    EXPECT_EQ(find_operator("R_N").op_class, 0);
    EXPECT_EQ(find_operator("R_D").op_class, -1);
    EXPECT_EQ(find_operator("K_N").kind, OperatorKind::poisson);
    EXPECT_FALSE(find_operator("R").order.has_value());
    EXPECT_EQ(find_operator("R").kind, OperatorKind::regularizing);
    EXPECT_TRUE(find_operator("gamma1").maps_to_boundary);
    EXPECT_THROW(find_operator("nope"), std::invalid_argument);
    for (const auto& op : kCatalog)
        if (op.kind == OperatorKind::regularizing) {
            EXPECT_FALSE(op.order.has_value());
        }
}

TEST(Apply, Examples) {
    auto c2 = DomainCtx::make(2), c3 = DomainCtx::make(3);
    EXPECT_EQ(std::get<SpaceParam>(apply_operator("R_N", P("F:0,2,2"), c3)), P("F:2,2,2"));
    auto r = apply_operator("R_N", P("F:-3/5,2,2"), c3);
    ASSERT_TRUE(is_violation(r));
    EXPECT_EQ(std::get<ClassViolation>(r).threshold, Rat(-1, 2));
    EXPECT_FALSE(std::get<ClassViolation>(r).on_boundary);
    EXPECT_EQ(std::get<SpaceParam>(apply_operator("gamma0", P("F:1,2,2"), c2)), P("B:1/2,2,2@bd"));
}

TEST(Apply, BoundaryQ) {
    auto c3 = DomainCtx::make(3);
    EXPECT_EQ(std::get<SpaceParam>(apply_operator("gamma0", P("F:2,2,4"), c3)), P("B:3/2,2,2@bd"));
    EXPECT_EQ(std::get<SpaceParam>(apply_operator("gamma0", P("B:2,2,4"), c3)), P("B:3/2,2,4@bd"));
}

TEST(Apply, PoissonAndRegularizing) {
    auto c3 = DomainCtx::make(3);
    EXPECT_EQ(std::get<SpaceParam>(apply_operator("K_D", P("B:3/2,2,2@bd"), c3)), P("B:2,2,2"));
    EXPECT_EQ(std::get<SpaceParam>(apply_operator("K_N", P("B:1/2,2,2@bd"), c3)), P("B:2,2,2"));
    EXPECT_THROW(apply_operator("K_D", P("F:1,2,2"), c3), std::invalid_argument);
    EXPECT_THROW(apply_operator("R", P("F:3,2,2"), c3), std::domain_error);
}

TEST(GammaOne, Examples) {
    auto c2 = DomainCtx::make(2), c3 = DomainCtx::make(3);
    EXPECT_EQ(std::get<SpaceParam>(trace_gamma1_bound(P("F:2,2,2"), c3)), P("B:1/2,2,2@bd"));
    auto edge = trace_gamma1_bound(P("F:3/2,2,2"), c3);
    ASSERT_TRUE(is_violation(edge));
    EXPECT_TRUE(std::get<ClassViolation>(edge).on_boundary);
    EXPECT_EQ(std::get<SpaceParam>(trace_gamma1_bound(P("B:3,1,1"), c2)), P("B:1,1,1@bd"));
}

TEST(Apply, ThresholdIsSharp) {
    Gen g;
    for (int i = 0; i < 5000; ++i) {
        int n = static_cast<int>(g.integer(2, 5));
        auto ctx = DomainCtx::make(n);
        const auto& op = kCatalog[static_cast<std::size_t>(g.integer(0, 5))];  // the classed entries come first
        if (!op.op_class || !op.order) continue;
        Rat lam = g.rational(Rat(1, 32), Rat(3));
        Rat th = *op.op_class + max(lam - 1, Rat(n) * lam - Rat(n));
        Rat off = g.rational(Rat(-2), Rat(2));
        auto r = apply_operator(op, F(th + off, lam), ctx);
        EXPECT_EQ(is_violation(r), off.sign() <= 0) << op.name;
        if (is_violation(r)) {
            EXPECT_EQ(std::get<ClassViolation>(r).threshold, th);
            EXPECT_EQ(std::get<ClassViolation>(r).on_boundary, off.sign() == 0);
        }
    }
}

// The standard route can fall below the class of R_N while the sharp route stays above it.
TEST(Apply, NeumannObstructionExists) {
    auto c3 = DomainCtx::make(3);
    auto x = P("F:5/4,3/2,2");
    ASSERT_TRUE(neumann_safe_subsector(x, c3));
    EXPECT_TRUE(is_violation(apply_operator("R_N", map_B_standard(x, c3, Rat(1, 64)), c3)));
    auto sharp = apply_operator("R_N", map_B_sharp(x, c3), c3);
    ASSERT_FALSE(is_violation(sharp));
    EXPECT_TRUE(embeds(std::get<SpaceParam>(sharp), x.with_s(x.s + delta(x, c3, Rat(1, 64)).value), c3).holds);
}

TEST(Defect, Descriptions) {
    EXPECT_TRUE(parametrix_defect(Problem::dirichlet).zero);
    auto n = parametrix_defect(Problem::neumann);
    EXPECT_FALSE(n.zero);
    EXPECT_EQ(n.op, "R");
    auto c3 = DomainCtx::make(3);
    EXPECT_TRUE(defect_absorbable(P("F:5/2,2,2"), c3));
    EXPECT_FALSE(defect_absorbable(P("F:3/2,2,2"), c3));
    EXPECT_EQ(parse_problem("neumann"), Problem::neumann);
    EXPECT_THROW(parse_problem("robin"), std::invalid_argument);
}

}  // namespace
}  // namespace fscalc
