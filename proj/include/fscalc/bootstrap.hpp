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
#include "fscalc/green.hpp"
#include "fscalc/params.hpp"
#include "fscalc/product.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fscalc {

enum class StepRule {
    nonlinear_gain_standard,
    nonlinear_gain_sharp,
    parametrix_apply,
    join,
    embed,
    defect_absorb,
    done,
};

inline const char* to_string(StepRule r) {
    switch (r) {
        case StepRule::nonlinear_gain_standard: return "nonlinear-gain-standard";
        case StepRule::nonlinear_gain_sharp: return "nonlinear-gain-sharp";
        case StepRule::parametrix_apply: return "parametrix-apply";
        case StepRule::join: return "join";
        case StepRule::embed: return "embed";
        case StepRule::defect_absorb: return "defect-absorb";
        case StepRule::done: return "done";
    }
    return "?";
}

/// Which of the four target placements a gain realised, relative to the target:
/// trivial (gain already embeds), sawtooth (slope-1 moves down onto the target's s),
/// staircase (horizontal moves at the gain's s), mixed (pure vertical gain).
enum class IterationCase { trivial, sawtooth, staircase, mixed };

inline const char* to_string(IterationCase c) {
    switch (c) {
        case IterationCase::trivial: return "trivial";
        case IterationCase::sawtooth: return "sawtooth";
        case IterationCase::staircase: return "staircase";
        case IterationCase::mixed: return "mixed";
    }
    return "?";
}

struct TraceStep {
    int index = 0;
    StepRule rule = StepRule::done;
    std::vector<SpaceParam> input;
    std::optional<SpaceParam> output;  // absent for a recorded class violation
    std::string anchor;
    std::optional<std::string> op;  // parametrix-apply: operator name
    std::optional<ClassViolation> violation;
    std::optional<IterationCase> iteration_case;  // join and final embed steps
    bool eps_used = false;                         // the critical-line deficit 1 − ε was applied
};

enum class VerdictStatus { certified, rejected, aborted };

enum class ReasonCode {
    none,
    sector_violation,
    class_violation,
    safe_subsector_violation,
    scale_mismatch,
    guard_max_steps,
    guard_no_progress,
    flux_condition_unmet,
    dimension_unsupported,
    not_connected,
    divergence_nonzero,
    no_condition_satisfied,
};

inline const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::certified: return "certified";
        case VerdictStatus::rejected: return "rejected";
        case VerdictStatus::aborted: return "aborted";
    }
    return "?";
}

inline const char* to_string(ReasonCode r) {
    switch (r) {
        case ReasonCode::none: return "none";
        case ReasonCode::sector_violation: return "sector-violation";
        case ReasonCode::class_violation: return "class-violation";
        case ReasonCode::safe_subsector_violation: return "safe-subsector-violation";
        case ReasonCode::scale_mismatch: return "scale-mismatch";
        case ReasonCode::guard_max_steps: return "guard-max-steps";
        case ReasonCode::guard_no_progress: return "guard-no-progress";
        case ReasonCode::flux_condition_unmet: return "flux-condition-unmet";
        case ReasonCode::dimension_unsupported: return "dimension-unsupported";
        case ReasonCode::not_connected: return "not-connected";
        case ReasonCode::divergence_nonzero: return "divergence-nonzero";
        case ReasonCode::no_condition_satisfied: return "no-condition-satisfied";
    }
    return "?";
}

struct Verdict {
    VerdictStatus status = VerdictStatus::rejected;
    ReasonCode reason = ReasonCode::none;
    std::string detail;
};

struct BootstrapTrace {
    Problem problem = Problem::dirichlet;
    DomainCtx ctx;
    Rat eps;
    SpaceParam start;
    SpaceParam target;
    std::vector<TraceStep> steps;
    Verdict verdict;

    bool certified() const { return verdict.status == VerdictStatus::certified; }

    int gain_count() const {
        int c = 0;
        for (const auto& s : steps)
            if (s.rule == StepRule::nonlinear_gain_standard) ++c;
        return c;
    }
};

inline constexpr int kDefaultMaxSteps = 10000;
inline const Rat kDefaultEps{1, 64};

namespace anchors {
inline constexpr const char* kGainStandard = "B: F^s_{p,q} -> F^s + F^{s-1} -> F^{s-2+delta(s,p)}_{p,q}";
inline constexpr const char* kGainSharp = "B: F^s_{p,q} -> F^{s-1}_{p*,q}, n/p* = n/p + (n/p - s)_+";
inline constexpr const char* kParametrixD = "R_D(u d1 u) in F^{s+delta(s,p)}_{p,q}; R_D bounded for s > r + max(1/p-1, n/p-n)";
inline constexpr const char* kParametrixN = "R_N of class 0: bounded from F^{s-2}_{p,q} iff s-2 > max(1/p-1, n/p-n)";
inline constexpr const char* kJoin = "u in F^{s1}_{p1,q1} containing F^t_{r,o} + F^{s+delta(s,p)}_{p,q}";
inline constexpr const char* kEmbed = "Sobolev embeddings down slope-1 lines, to the right by finite measure";
inline constexpr const char* kSharpEmbed = "F^{s+1}_{p*,q} embeds in F^{s+delta(s,p)}_{p,q}";
inline constexpr const char* kDefect = "A~_N A_N = 1 - R, R of order -inf: R u in F^t_{r,o}";
inline constexpr const char* kDoneD = "u = R_D f + K_D phi - R_D(u d1 u) in F^t_{r,o}";
inline constexpr const char* kDoneN = "u = R_N f + K_N phi + R u - R_N(u d1 u) in F^t_{r,o}";
}  // namespace anchors

inline IterationCase classify_gain(const SpaceParam& gain, const SpaceParam& target, const DomainCtx& ctx) {
    bool s_above = gain.s >= target.s;
    bool idx_above = sobolev_index(gain, ctx) >= sobolev_index(target, ctx);
    if (s_above) return idx_above ? IterationCase::trivial : IterationCase::sawtooth;
    return idx_above ? IterationCase::staircase : IterationCase::mixed;
}

namespace detail {

inline SectorCheck problem_sector(Problem problem, const SpaceParam& x, const DomainCtx& ctx) {
    return problem == Problem::dirichlet ? check_dirichlet_sector(x, ctx) : check_neumann_sector(x, ctx);
}

class TraceBuilder {
public:
    explicit TraceBuilder(BootstrapTrace& t) : t_(t) {}

    TraceStep& push(StepRule rule, std::vector<SpaceParam> input, std::optional<SpaceParam> output,
                    const char* anchor) {
        TraceStep s;
        s.index = static_cast<int>(t_.steps.size());
        s.rule = rule;
        s.input = std::move(input);
        s.output = std::move(output);
        s.anchor = anchor;
        t_.steps.push_back(std::move(s));
        return t_.steps.back();
    }

    void finish(VerdictStatus status, ReasonCode reason, std::string detail) {
        t_.verdict = Verdict{status, reason, std::move(detail)};
    }

private:
    BootstrapTrace& t_;
};

}  // namespace detail

/// Certifies u ∈ target from u ∈ start for the Dirichlét or Neumann model problem.
///
/// Each round computes the space of the solution-operator image of u∂₁u from the
/// current space X of u (the gain G), stops once G embeds in the target, and otherwise
/// replaces X by join(target, G). For the Neumann problem the standard route can hit
/// the class-0 barrier of R_N; the round then falls back to the sharp product route,
/// which needs X in the subsector s > max(1, n/p − 1 + ½δ_{n2}).
inline BootstrapTrace run_bootstrap(Problem problem, const SpaceParam& start, const SpaceParam& target,
                                    const DomainCtx& ctx, const Rat& eps = kDefaultEps,
                                    int max_steps = kDefaultMaxSteps) {
    BootstrapTrace t;
    t.problem = problem;
    t.ctx = ctx;
    t.eps = eps;
    t.start = start;
    t.target = target;
    detail::TraceBuilder b(t);
    using VS = VerdictStatus;
    using RC = ReasonCode;

    if (eps.sign() <= 0) throw std::invalid_argument("eps must be > 0");
    if (!start.interior() || !target.interior()) {
        b.finish(VS::rejected, RC::sector_violation, "start and target must be interior spaces");
        return t;
    }
    if (start.scale != target.scale) {
        b.finish(VS::rejected, RC::scale_mismatch, "start and target must be on the same scale");
        return t;
    }
    for (const auto* which : {&start, &target}) {
        auto chk = detail::problem_sector(problem, *which, ctx);
        if (!chk.inside) {
            b.finish(VS::rejected, RC::sector_violation,
                     std::string(which == &start ? "start " : "target ") + format_space(*which) + " not in the " +
                         to_string(problem) + " sector s > " + chk.threshold.str() +
                         (chk.on_boundary ? " (boundary of sector)" : ""));
            return t;
        }
    }

    const char* op_name = problem == Problem::dirichlet ? "R_D" : "R_N";
    const OperatorSpec& solver = find_operator(op_name);
    const char* parametrix_anchor = problem == Problem::dirichlet ? anchors::kParametrixD : anchors::kParametrixN;

    if (problem == Problem::neumann) {
        if (!defect_absorbable(target, ctx)) {
            b.finish(VS::rejected, RC::class_violation,
                     "target " + format_space(target) + " outside D_2; the regularizing defect cannot be placed");
            return t;
        }
        b.push(StepRule::defect_absorb, {target}, target, anchors::kDefect);
    }

    SpaceParam x = start;
    while (static_cast<int>(t.steps.size()) < max_steps) {
        auto bu = map_B_standard(x, ctx, eps);
        auto& g_step = b.push(StepRule::nonlinear_gain_standard, {x}, bu, anchors::kGainStandard);
        g_step.eps_used = delta(x, ctx, eps).at_critical;
        auto applied = apply_operator(solver, bu, ctx);

        SpaceParam gain;
        if (auto* viol = std::get_if<ClassViolation>(&applied)) {
            auto& v_step = b.push(StepRule::parametrix_apply, {bu}, std::nullopt, parametrix_anchor);
            v_step.op = op_name;
            v_step.violation = *viol;
            if (problem == Problem::dirichlet) {
                b.finish(VS::rejected, RC::class_violation,
                         "R_D undefined on " + format_space(bu) + " (threshold " + viol->threshold.str() + ")");
                return t;
            }
            auto safe = check_neumann_safe_subsector(x, ctx);
            if (!safe.inside) {
                b.finish(VS::rejected, RC::safe_subsector_violation,
                         "sharp route needs s > " + safe.threshold.str() + " at " + format_space(x));
                return t;
            }
            auto bs = map_B_sharp(x, ctx);
            b.push(StepRule::nonlinear_gain_sharp, {x}, bs, anchors::kGainSharp);
            auto sharp_applied = apply_operator(solver, bs, ctx);
            if (auto* v2 = std::get_if<ClassViolation>(&sharp_applied)) {
                auto& s2 = b.push(StepRule::parametrix_apply, {bs}, std::nullopt, parametrix_anchor);
                s2.op = op_name;
                s2.violation = *v2;
                b.finish(VS::rejected, RC::class_violation, "R_N undefined on sharp image " + format_space(bs));
                return t;
            }
            auto lifted = std::get<SpaceParam>(sharp_applied);
            auto& p_step = b.push(StepRule::parametrix_apply, {bs}, lifted, parametrix_anchor);
            p_step.op = op_name;
            gain = x.with_s(x.s + delta(x, ctx, eps).value);
            b.push(StepRule::embed, {lifted}, gain, anchors::kSharpEmbed);
        } else {
            gain = std::get<SpaceParam>(applied);
            auto& p_step = b.push(StepRule::parametrix_apply, {bu}, gain, parametrix_anchor);
            p_step.op = op_name;
        }

        auto cls = classify_gain(gain, target, ctx);
        if (embeds(gain, target, ctx).holds) {
            auto& e = b.push(StepRule::embed, {gain}, target, anchors::kEmbed);
            e.iteration_case = cls;
            b.push(StepRule::done, {target, target}, target,
                   problem == Problem::dirichlet ? anchors::kDoneD : anchors::kDoneN);
            b.finish(VS::certified, RC::none, "u in " + format_space(target));
            return t;
        }
        auto joined = join(target, gain, ctx).space;
        auto& j = b.push(StepRule::join, {target, gain}, joined, anchors::kJoin);
        j.iteration_case = cls;
        // joins only ever move down the embedding order, so a repeat means no progress
        if (joined == x) {
            b.finish(VS::aborted, RC::guard_no_progress, "two consecutive identical joins");
            return t;
        }
        x = joined;
    }
    b.finish(VS::aborted, RC::guard_max_steps, "step cap " + std::to_string(max_steps) + " reached");
    return t;
}

inline BootstrapTrace bootstrap_dirichlet(const SpaceParam& start, const SpaceParam& target, const DomainCtx& ctx,
                                          const Rat& eps = kDefaultEps, int max_steps = kDefaultMaxSteps) {
    return run_bootstrap(Problem::dirichlet, start, target, ctx, eps, max_steps);
}

inline BootstrapTrace bootstrap_neumann(const SpaceParam& start, const SpaceParam& target, const DomainCtx& ctx,
                                        const Rat& eps = kDefaultEps, int max_steps = kDefaultMaxSteps) {
    return run_bootstrap(Problem::neumann, start, target, ctx, eps, max_steps);
}

/// Smallest deficit used along a trace (over every standard gain input).
inline std::optional<Rat> min_deficit(const BootstrapTrace& t) {
    std::optional<Rat> m;
    for (const auto& s : t.steps) {
        if (s.rule != StepRule::nonlinear_gain_standard) continue;
        auto d = delta(s.input.front(), t.ctx, t.eps).value;
        m = m ? min(*m, d) : d;
    }
    return m;
}

/// Data spaces that go with a solution target (t,r,o): f in X^{t−2}_{r,o}(Ω̄) and φ on Γ.
struct DataSpaces {
    SpaceParam f;
    SpaceParam phi;
};

inline DataSpaces canonical_data_spaces(Problem problem, const SpaceParam& target) {
    Rat shift = problem == Problem::dirichlet ? Rat(0) : Rat(1);
    const ExtExp& q_bd = target.scale == Scale::F ? target.p : target.q;
    return DataSpaces{target.with_s(target.s - 2),
                      SpaceParam{Scale::B, Location::boundary, target.s - shift - target.lam(), target.p, q_bd}};
}

struct RegularityReport {
    BootstrapTrace trace;
    DataSpaces data;
};

/// Regularity statement for a solution u in `solution` with data matching `data_target`:
/// checks both sector conditions, runs the bootstrap, and reports the data spaces.
/// The data spaces are advisory.
inline RegularityReport regularity_theorem(Problem problem, const SpaceParam& solution, const SpaceParam& data_target,
                                           const DomainCtx& ctx, const Rat& eps = kDefaultEps) {
    return RegularityReport{run_bootstrap(problem, solution, data_target, ctx, eps),
                            canonical_data_spaces(problem, data_target)};
}

struct NSQuery {
    DomainCtx ctx;
    SpaceParam param;
    bool g_zero = true;
    bool flux_zero_per_component = true;
};

struct NSVerdict {
    bool accepted = false;
    std::optional<int> condition;  // 1, 2 or 3
    std::vector<ReasonCode> reasons;
    std::string detail;
    SpaceParam u, f, g, phi, pressure;
};

/// Existence for the stationary Navier–Stokes Dirichlét problem with g = 0.
///
/// Accepts iff n ∈ {2,3}, Ω is connected, the flux through every boundary component
/// vanishes, and (s,p,q) satisfies one of
///   (1) s > max(1, n/p + 1 − n/2);
///   (2) s > 1, s = n/p + 1 − n/2 and q ≤ 2 (any q on the F-scale);
///   (3) s = 1 and p ≥ 2 ≥ q.
inline NSVerdict ns_existence(const NSQuery& query) {
    const auto& x = query.param;
    require_interior(x, "ns_existence");
    const DomainCtx& ctx = query.ctx;
    NSVerdict v;
    v.u = x;
    v.f = x.with_s(x.s - 2);
    v.g = x.with_s(x.s - 1);
    v.pressure = x.with_s(x.s - 1);
    v.phi = SpaceParam{Scale::B, Location::boundary, x.s - x.lam(), x.p, x.scale == Scale::F ? x.p : x.q};

    if (ctx.n != 2 && ctx.n != 3) v.reasons.push_back(ReasonCode::dimension_unsupported);
    if (!ctx.connected) v.reasons.push_back(ReasonCode::not_connected);
    if (!query.g_zero) v.reasons.push_back(ReasonCode::divergence_nonzero);
    if (!query.flux_zero_per_component) v.reasons.push_back(ReasonCode::flux_condition_unmet);

    Rat n(ctx.n);
    Rat line = n * x.lam() + 1 - n / 2;
    const Rat half(1, 2);
    if (x.s > max(Rat(1), line)) {
        v.condition = 1;
    } else if (x.s > Rat(1) && x.s == line && (x.scale == Scale::F || x.mu() >= half)) {
        v.condition = 2;
    } else if (x.s == Rat(1) && x.lam() <= half && x.mu() >= half) {
        v.condition = 3;
    } else {
        v.reasons.push_back(ReasonCode::no_condition_satisfied);
    }
    v.accepted = v.reasons.empty();
    if (v.accepted) {
        v.detail = "condition (" + std::to_string(*v.condition) + ") satisfied";
    } else {
        std::string d;
        for (auto r : v.reasons) {
            if (!d.empty()) d += "; ";
            d += r == ReasonCode::no_condition_satisfied ? "no condition (1)-(3) satisfied" : to_string(r);
        }
        v.detail = d;
    }
    return v;
}

}  // namespace fscalc
