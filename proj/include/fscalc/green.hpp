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

#include "fscalc/params.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace fscalc {

enum class OperatorKind { interior_singular_green, trace, poisson, boundary_pdo, regularizing };

inline const char* to_string(OperatorKind k) {
    switch (k) {
        case OperatorKind::interior_singular_green: return "interior+singular-green";
        case OperatorKind::trace: return "trace";
        case OperatorKind::poisson: return "poisson";
        case OperatorKind::boundary_pdo: return "boundary-pdo";
        case OperatorKind::regularizing: return "regularizing";
    }
    return "?";
}

/// One entry of the Green-operator calculus: order d (nullopt for −∞) and class.
/// A missing class means no lower smoothness bound applies (differential and
/// Poisson operators).
struct OperatorSpec {
    std::string_view name;
    std::optional<int> order;
    std::optional<int> op_class;
    OperatorKind kind;
    bool maps_to_boundary;
    std::string_view description;
};

/// Built-in operators of the Dirichlét and Neumann model problems.
///
/// The systems 𝒜_D, 𝒜_N appear through their applicability sectors 𝔻₁ and 𝔻₂
/// (the classes of γ₀ and γ₁). The Dirichlét solution operator R_D has class
/// r − d = −1; the Neumann parametrix R_N has class 0 and cannot be lowered.
inline constexpr std::array<OperatorSpec, 10> kCatalog{{
    {"Delta", 2, std::nullopt, OperatorKind::interior_singular_green, false, "-Laplacian (differential)"},
    {"A_D", 2, 1, OperatorKind::interior_singular_green, false, "(-Delta, gamma0) system, interior column"},
    {"A_N", 2, 2, OperatorKind::interior_singular_green, false, "(-Delta, gamma1) system, interior column"},
    {"gamma0", 0, 1, OperatorKind::trace, true, "Dirichlet trace u|_Gamma"},
    {"gamma1", 1, 2, OperatorKind::trace, true, "Neumann trace n.grad u|_Gamma"},
    {"R_D", -2, -1, OperatorKind::interior_singular_green, false, "Dirichlet solution operator"},
    {"K_D", 0, std::nullopt, OperatorKind::poisson, false, "Dirichlet Poisson operator"},
    {"R_N", -2, 0, OperatorKind::interior_singular_green, false, "Neumann parametrix, interior part"},
    {"K_N", -1, std::nullopt, OperatorKind::poisson, false, "Neumann parametrix, Poisson part"},
    {"R", std::nullopt, 2, OperatorKind::regularizing, false, "|Omega|^-1 int_Omega u, order -inf"},
}};

inline const OperatorSpec& find_operator(std::string_view name) {
    for (const auto& op : kCatalog)
        if (op.name == name) return op;
    throw std::invalid_argument("unknown operator '" + std::string(name) + "'");
}

/// The operator is undefined on the input space: s is not above class + max(1/p − 1, n/p − n).
struct ClassViolation {
    std::string op;
    int op_class = 0;
    Rat s;
    Rat threshold;
    bool on_boundary = false;  // s equals the threshold
};

using OperatorResult = std::variant<SpaceParam, ClassViolation>;

inline bool is_violation(const OperatorResult& r) { return std::holds_alternative<ClassViolation>(r); }

/// Image of x under op. Interior operators keep (p,q) and lower s by the order;
/// trace operators land in B^{s−d−1/p}_{p,p}(Γ) for F-input and B^{s−d−1/p}_{p,q}(Γ)
/// for B-input; Poisson operators take B^{σ}_{p,q}(Γ) to B^{σ+1/p−d}_{p,q}(Ω̄).
inline OperatorResult apply_operator(const OperatorSpec& op, const SpaceParam& x, const DomainCtx& ctx) {
    if (!op.order) throw std::domain_error(std::string(op.name) + " has order -inf and no finite image");
    const Rat d(*op.order);
    if (op.kind == OperatorKind::poisson) {
        if (x.interior()) throw std::invalid_argument(std::string(op.name) + " expects a boundary space");
        return SpaceParam{Scale::B, Location::interior, x.s + x.lam() - d, x.p, x.q};
    }
    require_interior(x, "apply_operator");
    if (op.op_class) {
        auto chk = strict_above(x.s, dk_threshold(x.lam(), *op.op_class, ctx));
        if (!chk.inside) return ClassViolation{std::string(op.name), *op.op_class, x.s, chk.threshold, chk.on_boundary};
    }
    if (op.maps_to_boundary) {
        const ExtExp& q = x.scale == Scale::F ? x.p : x.q;
        return SpaceParam{Scale::B, Location::boundary, x.s - d - x.lam(), x.p, q};
    }
    return x.with_s(x.s - d);
}

inline OperatorResult apply_operator(std::string_view name, const SpaceParam& x, const DomainCtx& ctx) {
    return apply_operator(find_operator(name), x, ctx);
}

/// γ₁ u on Γ, defined for (s,p,q) ∈ 𝔻₂.
inline OperatorResult trace_gamma1_bound(const SpaceParam& x, const DomainCtx& ctx) {
    return apply_operator(find_operator("gamma1"), x, ctx);
}

enum class Problem { dirichlet, neumann };

inline const char* to_string(Problem p) { return p == Problem::dirichlet ? "dirichlet" : "neumann"; }

inline Problem parse_problem(std::string_view t) {
    if (t == "dirichlet") return Problem::dirichlet;
    if (t == "neumann") return Problem::neumann;
    throw std::invalid_argument("unknown problem '" + std::string(t) + "'");
}

struct ParametrixDefect {
    bool zero = true;
    std::optional<std::string_view> op;  // the regularizing defect, when present
    std::string description;
};

/// Ã_D inverts 𝒜_D exactly; Ã_N 𝒜_N = 1 − ℛ with ℛ of order −∞.
inline ParametrixDefect parametrix_defect(Problem problem) {
    if (problem == Problem::dirichlet) return {true, std::nullopt, "zero"};
    return {false, "R",
            "R u = |Omega|^-1 int_Omega u, order -inf, smooths into F^t_{r,o} for every admissible target"};
}

/// The regularizing defect lands in any target in 𝔻₂ (the only parameters where the
/// Neumann parametrix is used).
inline bool defect_absorbable(const SpaceParam& target, const DomainCtx& ctx) { return in_Dk(target, 2, ctx); }

}  // namespace fscalc
