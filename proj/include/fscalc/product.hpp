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

#pragma once

#include "fscalc/embed.hpp"
#include "fscalc/params.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace fscalc {

/// Deficit δ(s,p): how much better the nonlinearity v∂₁v behaves than −Δ.
struct Deficit {
    Rat value;
    bool at_critical = false;  // s = n/p and the ε-convention was used
};

/// δ(s,p) = 1 + min(0, s − n/p), except 1 − ε on the critical line s = n/p.
inline Deficit delta(const SpaceParam& x, const DomainCtx& ctx, const Rat& eps) {
    if (eps.sign() <= 0) throw std::invalid_argument("eps must be > 0");
    require_interior(x, "delta");
    Rat idx = sobolev_index(x, ctx);
    switch (idx.sign()) {
        case 1: return {Rat(1), false};
        case 0: return {Rat(1) - eps, true};
        default: return {Rat(1) + idx, false};
    }
}

/// Failure tags of the product boundedness conditions. `prd4` marks an undefined product.
enum class ProductCondition { prd4, prd6, prd7, prd8, prd9, q_clause };

inline const char* to_string(ProductCondition c) {
    switch (c) {
        case ProductCondition::prd4: return "prd4";
        case ProductCondition::prd6: return "prd6";
        case ProductCondition::prd7: return "prd7";
        case ProductCondition::prd8: return "prd8";
        case ProductCondition::prd9: return "prd9";
        case ProductCondition::q_clause: return "q-clause";
    }
    return "?";
}

struct ProductVerdict {
    bool defined = false;
    bool bounded = false;
    std::vector<ProductCondition> failed_conditions;
    bool conservative_b_scale = false;
};

namespace detail {
inline void require_product_operands(const SpaceParam& a, const SpaceParam& b, const char* what) {
    require_interior(a, what);
    require_interior(b, what);
    if (a.scale != b.scale) throw std::invalid_argument(std::string(what) + ": scale mismatch");
}
}  // namespace detail

/// The product is defined on X^{s0}_{p0} × X^{s1}_{p1} when s0 + s1 > max(0, n/p0 + n/p1 − n).
inline bool product_defined(const SpaceParam& a, const SpaceParam& b, const DomainCtx& ctx) {
    detail::require_product_operands(a, b, "product_defined");
    Rat n(ctx.n);
    return a.s + b.s > max(Rat(0), n * a.lam() + n * b.lam() - n);
}

/// Checks every boundedness condition for π_Ω: a × b → target, with the relaxed
/// non-strict smoothness condition (s₂ ≤ min(s₀,s₁) provided q₂ ≥ q_j wherever s₂ = s_j).
/// All conditions are applied conjunctively.
inline ProductVerdict product_bounded(const SpaceParam& a, const SpaceParam& b, const SpaceParam& target,
                                      const DomainCtx& ctx) {
    detail::require_product_operands(a, b, "product_bounded");
    require_interior(target, "product_bounded");
    if (target.scale != a.scale) throw std::invalid_argument("product_bounded: target scale mismatch");
    ProductVerdict v;
    v.conservative_b_scale = a.scale == Scale::B;
    v.defined = product_defined(a, b, ctx);
    if (!v.defined) {
        v.failed_conditions.push_back(ProductCondition::prd4);
        return v;
    }
    Rat n(ctx.n);
    const Rat i0 = a.s - n * a.lam(), i1 = b.s - n * b.lam(), i2 = target.s - n * target.lam();
    const Rat smin = min(a.s, b.s);

    if (target.s > smin) {
        v.failed_conditions.push_back(ProductCondition::prd6);
    } else if (target.s == smin) {
        // q₂ ≥ q_j  ⇔  1/q₂ ≤ 1/q_j
        bool ok = (a.s != target.s || target.mu() <= a.mu()) && (b.s != target.s || target.mu() <= b.mu());
        if (!ok) v.failed_conditions.push_back(ProductCondition::q_clause);
    }
    if (i2 > min(min(i0, i1), i0 + i1)) {
        v.failed_conditions.push_back(ProductCondition::prd7);
    }
    const Rat one(1);
    if (i2 == i0 && b.s == n * b.lam() && !(b.lam() >= one)) v.failed_conditions.push_back(ProductCondition::prd8);
    if (i2 == i1 && a.s == n * a.lam() && !(a.lam() >= one)) v.failed_conditions.push_back(ProductCondition::prd9);
    v.bounded = v.failed_conditions.empty();
    return v;
}

/// Optimal integrability exponent p* of the receiving space at smoothness min(s₀,s₁):
/// n/p* = n/p₁ + (s₀ − n/p₀)₋ + (s₁ − n/p₁ − (s₀ − n/p₀)₊)₊ with the operands ordered so s₀ ≥ s₁.
inline ExtExp p_star(const SpaceParam& a, const SpaceParam& b, const DomainCtx& ctx) {
    detail::require_product_operands(a, b, "p_star");
    const SpaceParam& hi = a.s >= b.s ? a : b;
    const SpaceParam& lo = a.s >= b.s ? b : a;
    Rat n(ctx.n);
    Rat i0 = hi.s - n * hi.lam();
    Rat n_over_p = n * lo.lam() + neg_part(i0) + pos_part(lo.s - n * lo.lam() - pos_part(i0));
    return ExtExp::from_recip(n_over_p / n);
}

/// The optimal receiving space (s_min, p*, q) with q = q₁ if s₀ > s₁ and max(q₀,q₁) if s₀ = s₁.
inline SpaceParam optimal_target(const SpaceParam& a, const SpaceParam& b, const DomainCtx& ctx) {
    auto ps = p_star(a, b, ctx);
    const SpaceParam& lo = a.s >= b.s ? b : a;
    Rat mu = a.s == b.s ? min(a.mu(), b.mu()) : lo.mu();
    return SpaceParam{a.scale, Location::interior, lo.s, ps, ExtExp::from_recip(mu)};
}

inline void require_dirichlet_sector(const SpaceParam& x, const DomainCtx& ctx, const char* what) {
    auto c = check_dirichlet_sector(x, ctx);
    if (!c.inside) {
        throw std::domain_error(std::string(what) + ": " + format_space(x) + " outside the sector s > " +
                                c.threshold.str() + (c.on_boundary ? " (boundary of sector)" : ""));
    }
}

/// Space receiving B(u) = u∂₁u for u in x: X^{s−2+δ(s,p)}_{p,q}.
inline SpaceParam map_B_standard(const SpaceParam& x, const DomainCtx& ctx, const Rat& eps) {
    require_dirichlet_sector(x, ctx, "map_B_standard");
    return x.with_s(x.s - 2 + delta(x, ctx, eps).value);
}

/// Sharper receiving space X^{s−1}_{p*,q} for B(u), with n/p* = n/p + (n/p − s)₊.
inline SpaceParam map_B_sharp(const SpaceParam& x, const DomainCtx& ctx) {
    require_dirichlet_sector(x, ctx, "map_B_sharp");
    Rat n(ctx.n);
    Rat np = n * x.lam();
    Rat np_star = np + pos_part(np - x.s);
    auto out = x.with_s(x.s - 1);
    out.p = ExtExp::from_recip(np_star / n);
    return out;
}

}  // namespace fscalc
