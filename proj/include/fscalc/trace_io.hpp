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

// Trace JSON (stable field names) and the step-by-step replay validator.
//
//   { "problem": "dirichlet"|"neumann", "n": 3, "N": 1, "eps": "1/64",
//     "start": "F:1,2,2", "target": "F:2,2,2",
//     "steps": [ { "index": 0, "rule": "nonlinear-gain-standard",
//                  "input": ["F:1,2,2"], "output": "F:-1/2,2,2", "anchor": "...",
//                  ["operator"], ["violation"], ["case"], ["eps_used"] }, ... ],
//     "verdict": { "status": "certified", "reason": "none", "detail": "..." } }

#include "fscalc/bootstrap.hpp"

#include <json.hpp>

#include <string>

namespace fscalc {

using Json = nlohmann::ordered_json;

inline StepRule parse_step_rule(const std::string& t) {
    for (auto r : {StepRule::nonlinear_gain_standard, StepRule::nonlinear_gain_sharp, StepRule::parametrix_apply,
                   StepRule::join, StepRule::embed, StepRule::defect_absorb, StepRule::done})
        if (t == to_string(r)) return r;
    throw std::invalid_argument("unknown step rule '" + t + "'");
}

inline IterationCase parse_iteration_case(const std::string& t) {
    for (auto c : {IterationCase::trivial, IterationCase::sawtooth, IterationCase::staircase, IterationCase::mixed})
        if (t == to_string(c)) return c;
    throw std::invalid_argument("unknown iteration case '" + t + "'");
}

inline VerdictStatus parse_verdict_status(const std::string& t) {
    for (auto s : {VerdictStatus::certified, VerdictStatus::rejected, VerdictStatus::aborted})
        if (t == to_string(s)) return s;
    throw std::invalid_argument("unknown verdict status '" + t + "'");
}

inline ReasonCode parse_reason(const std::string& t) {
    for (int i = 0; i <= static_cast<int>(ReasonCode::no_condition_satisfied); ++i) {
        auto r = static_cast<ReasonCode>(i);
        if (t == to_string(r)) return r;
    }
    throw std::invalid_argument("unknown reason code '" + t + "'");
}

inline Json to_json(const TraceStep& s) {
    Json j;
    j["index"] = s.index;
    j["rule"] = to_string(s.rule);
    Json in = Json::array();
    for (const auto& x : s.input) in.push_back(format_space(x));
    j["input"] = std::move(in);
    j["output"] = s.output ? Json(format_space(*s.output)) : Json(nullptr);
    j["anchor"] = s.anchor;
    if (s.op) j["operator"] = *s.op;
    if (s.violation) {
        j["violation"] = {{"operator", s.violation->op},
                          {"class", s.violation->op_class},
                          {"s", s.violation->s.str()},
                          {"threshold", s.violation->threshold.str()},
                          {"boundary_of_sector", s.violation->on_boundary}};
    }
    if (s.iteration_case) j["case"] = to_string(*s.iteration_case);
    if (s.eps_used) j["eps_used"] = true;
    return j;
}

inline Json to_json(const Verdict& v) {
    return Json{{"status", to_string(v.status)}, {"reason", to_string(v.reason)}, {"detail", v.detail}};
}

inline Json to_json(const BootstrapTrace& t) {
    Json j;
    j["problem"] = to_string(t.problem);
    j["n"] = t.ctx.n;
    j["N"] = t.ctx.boundary_components;
    j["eps"] = t.eps.str();
    j["start"] = format_space(t.start);
    j["target"] = format_space(t.target);
    Json steps = Json::array();
    for (const auto& s : t.steps) steps.push_back(to_json(s));
    j["steps"] = std::move(steps);
    j["verdict"] = to_json(t.verdict);
    return j;
}

inline BootstrapTrace trace_from_json(const Json& j) {
    try {
        BootstrapTrace t;
        t.problem = parse_problem(j.at("problem").get<std::string>());
        t.ctx = DomainCtx::make(j.at("n").get<int>(), j.value("N", 1));
        t.eps = Rat::parse(j.at("eps").get<std::string>());
        t.start = parse_space(j.at("start").get<std::string>());
        t.target = parse_space(j.at("target").get<std::string>());
        for (const auto& js : j.at("steps")) {
            TraceStep s;
            s.index = js.at("index").get<int>();
            s.rule = parse_step_rule(js.at("rule").get<std::string>());
            for (const auto& in : js.at("input")) s.input.push_back(parse_space(in.get<std::string>()));
            if (!js.at("output").is_null()) s.output = parse_space(js.at("output").get<std::string>());
            s.anchor = js.at("anchor").get<std::string>();
            if (js.contains("operator")) s.op = js["operator"].get<std::string>();
            if (js.contains("violation")) {
                const auto& v = js["violation"];
                s.violation = ClassViolation{v.at("operator").get<std::string>(), v.at("class").get<int>(),
                                             Rat::parse(v.at("s").get<std::string>()),
                                             Rat::parse(v.at("threshold").get<std::string>()),
                                             v.value("boundary_of_sector", false)};
            }
            if (js.contains("case")) s.iteration_case = parse_iteration_case(js["case"].get<std::string>());
            s.eps_used = js.value("eps_used", false);
            t.steps.push_back(std::move(s));
        }
        const auto& v = j.at("verdict");
        t.verdict = Verdict{parse_verdict_status(v.at("status").get<std::string>()),
                            parse_reason(v.at("reason").get<std::string>()), v.value("detail", std::string())};
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed trace: ") + e.what());
    }
}

struct ReplayReport {
    bool ok = true;
    int failed_index = -1;  // -1: trace-level failure or success
    std::string message;
};

/// Re-derives every step of a trace from its inputs.
///
/// The replay tracks three facts: the current space of u, the space of the
/// nonlinear term u∂₁u, and the space of its solution-operator image. Every step
/// must consume exactly the fact it claims and produce exactly the recorded output.
inline ReplayReport replay(const BootstrapTrace& t) {
    auto fail = [](int idx, std::string msg) { return ReplayReport{false, idx, std::move(msg)}; };
    const auto& ctx = t.ctx;
    const char* solver = t.problem == Problem::dirichlet ? "R_D" : "R_N";

    if (t.certified()) {
        for (const auto* x : {&t.start, &t.target}) {
            auto chk = detail::problem_sector(t.problem, *x, ctx);
            if (!chk.inside) return fail(-1, "certified trace with " + format_space(*x) + " outside the sector");
        }
    }

    SpaceParam u = t.start;
    std::optional<SpaceParam> term, gain;
    bool absorbed = false;
    bool finished = false;
    try {
        for (std::size_t i = 0; i < t.steps.size(); ++i) {
            const auto& s = t.steps[i];
            const int idx = static_cast<int>(i);
            if (s.index != idx) return fail(idx, "step index out of sequence");
            if (finished) return fail(idx, "step after done");
            const bool needs_output = !(s.rule == StepRule::parametrix_apply && s.violation);
            if (needs_output && !s.output) return fail(idx, "missing output");
            auto expect_inputs = [&](std::size_t n) { return s.input.size() == n; };

            switch (s.rule) {
                case StepRule::nonlinear_gain_standard: {
                    if (!expect_inputs(1) || s.input[0] != u) return fail(idx, "gain input is not the current space of u");
                    auto d = delta(u, ctx, t.eps);
                    if (*s.output != map_B_standard(u, ctx, t.eps)) return fail(idx, "standard gain output mismatch");
                    if (s.eps_used != d.at_critical) return fail(idx, "eps_used flag mismatch");
                    term = s.output;
                    gain.reset();
                    break;
                }
                case StepRule::nonlinear_gain_sharp: {
                    if (!expect_inputs(1) || s.input[0] != u) return fail(idx, "gain input is not the current space of u");
                    if (t.problem == Problem::neumann && !neumann_safe_subsector(u, ctx))
                        return fail(idx, "sharp route outside the safe subsector");
                    if (*s.output != map_B_sharp(u, ctx)) return fail(idx, "sharp gain output mismatch");
                    term = s.output;
                    gain.reset();
                    break;
                }
                case StepRule::parametrix_apply: {
                    if (!s.op || *s.op != solver) return fail(idx, std::string("operator must be ") + solver);
                    if (!term || !expect_inputs(1) || s.input[0] != *term)
                        return fail(idx, "parametrix input is not the nonlinear term's space");
                    auto r = apply_operator(*s.op, *term, ctx);
                    if (s.violation) {
                        auto* v = std::get_if<ClassViolation>(&r);
                        if (!v || v->threshold != s.violation->threshold || s.output)
                            return fail(idx, "recorded class violation does not reproduce");
                        term.reset();
                    } else {
                        if (is_violation(r)) return fail(idx, "operator undefined on its input");
                        if (*s.output != std::get<SpaceParam>(r)) return fail(idx, "parametrix output mismatch");
                        gain = s.output;
                        term.reset();
                    }
                    break;
                }
                case StepRule::embed: {
                    if (!gain || !expect_inputs(1) || s.input[0] != *gain)
                        return fail(idx, "embed input is not the current gain");
                    if (!embeds(*gain, *s.output, ctx).holds) return fail(idx, "embedding does not hold");
                    gain = s.output;
                    break;
                }
                case StepRule::join: {
                    if (!gain || !expect_inputs(2) || s.input[0] != t.target || s.input[1] != *gain)
                        return fail(idx, "join inputs must be [target, gain]");
                    if (*s.output != join(t.target, *gain, ctx).space) return fail(idx, "join output mismatch");
                    u = *s.output;
                    gain.reset();
                    break;
                }
                case StepRule::defect_absorb: {
                    if (t.problem != Problem::neumann) return fail(idx, "defect-absorb only applies to neumann");
                    if (!expect_inputs(1) || s.input[0] != t.target || *s.output != t.target)
                        return fail(idx, "defect-absorb must map target to target");
                    if (!defect_absorbable(t.target, ctx)) return fail(idx, "target outside D_2");
                    absorbed = true;
                    break;
                }
                case StepRule::done: {
                    if (!gain || *gain != t.target) return fail(idx, "nonlinear term not yet in target");
                    if (!expect_inputs(2) || s.input[0] != t.target || s.input[1] != t.target ||
                        *s.output != t.target)
                        return fail(idx, "done must combine target with target");
                    if (t.problem == Problem::neumann && !absorbed) return fail(idx, "regularizing defect not absorbed");
                    u = t.target;
                    finished = true;
                    break;
                }
            }
        }
    } catch (const std::exception& e) {
        return fail(-1, std::string("replay error: ") + e.what());
    }
    if (t.certified() && !finished) return fail(-1, "certified verdict without a done step");
    if (!t.certified() && finished) return fail(-1, "done step in a non-certified trace");
    return {};
}

}  // namespace fscalc
