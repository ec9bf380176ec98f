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

#include <optional>
#include <stdexcept>
#include <string>

namespace fscalc {

enum class EmbedRule {
    identical,
    same_p_higher_s,
    same_p_same_s_q_monotone,
    sobolev_slope_1,
    finite_measure_right,
    composite,
};

inline const char* to_string(EmbedRule r) {
    switch (r) {
        case EmbedRule::identical: return "identical";
        case EmbedRule::same_p_higher_s: return "same-p-higher-s";
        case EmbedRule::same_p_same_s_q_monotone: return "same-p-same-s-q-monotone";
        case EmbedRule::sobolev_slope_1: return "sobolev-slope-1";
        case EmbedRule::finite_measure_right: return "finite-measure-right";
        case EmbedRule::composite: return "composite";
    }
    return "?";
}

struct EmbedVerdict {
    bool holds = false;
    std::optional<EmbedRule> rule;  // set iff holds
    std::string strictness_note;
};

namespace detail {
inline void require_comparable(const SpaceParam& a, const SpaceParam& b, const char* what) {
    require_interior(a, what);
    require_interior(b, what);
    if (a.scale != b.scale) throw std::invalid_argument(std::string(what) + ": scale mismatch (mixed B/F)");
}
}  // namespace detail

/// Whether a ↪ b over the bounded domain.
///
/// The relation is the closure of: equal p with lower s (any q) or equal s with
/// larger q; Sobolev embeddings down slope-1 lines towards larger p; and moves to
/// smaller p at fixed s. On the B-scale a slope-1 move at unchanged Sobolev index
/// also needs q to grow. Any derivable chain needs at most two moves, so the
/// closure reduces to the two cases below.
inline EmbedVerdict embeds(const SpaceParam& a, const SpaceParam& b, const DomainCtx& ctx) {
    detail::require_comparable(a, b, "embeds");
    EmbedVerdict v;
    if (a.scale == Scale::B) v.strictness_note = "B-scale q-conditions are conservative";
    if (a == b) {
        v.holds = true;
        v.rule = EmbedRule::identical;
        return v;
    }
    const bool q_grows = a.mu() >= b.mu();  // q_a <= q_b
    if (b.lam() >= a.lam()) {
        // no move towards larger p needed; s can only go down
        auto cs = a.s <=> b.s;
        if (cs < 0 || (cs == 0 && !q_grows)) return v;
        v.holds = true;
        if (a.lam() == b.lam())
            v.rule = cs > 0 ? EmbedRule::same_p_higher_s : EmbedRule::same_p_same_s_q_monotone;
        else
            v.rule = (cs == 0) ? EmbedRule::finite_measure_right : EmbedRule::composite;
        return v;
    }
    auto ci = sobolev_index(a, ctx) <=> sobolev_index(b, ctx);
    if (ci < 0) return v;
    if (ci == 0 && a.scale == Scale::B && !q_grows) return v;
    v.holds = true;
    v.rule = EmbedRule::sobolev_slope_1;
    if (ci == 0 && a.scale == Scale::F) v.strictness_note = "limiting F-scale Sobolev embedding, any q";
    return v;
}

struct JoinResult {
    SpaceParam space;
    bool clamped = false;  // the computed n/p was negative and p was set to ∞
};

/// Least space (for the embedding order) receiving both a and b: s is the smaller
/// s, the Sobolev index is the smaller index, and q is the largest q among the
/// inputs that the result cannot reach by a strict move.
inline JoinResult join(const SpaceParam& a, const SpaceParam& b, const DomainCtx& ctx) {
    detail::require_comparable(a, b, "join");
    Rat s = min(a.s, b.s);
    Rat ia = sobolev_index(a, ctx), ib = sobolev_index(b, ctx);
    Rat idx = min(ia, ib);
    Rat n_over_p = s - idx;
    JoinResult out;
    if (n_over_p.sign() < 0) {
        out.clamped = true;
        n_over_p = Rat(0);
    }
    // Inputs at the minimal s must keep their q. On the B-scale so must inputs whose
    // slope-1 move to the result keeps the index unchanged.
    std::optional<Rat> mu;
    auto take = [&](const SpaceParam& x, const Rat& ix) {
        bool pinned = x.s == s || (x.scale == Scale::B && ix == idx);
        if (pinned) mu = mu ? min(*mu, x.mu()) : x.mu();
    };
    take(a, ia);
    take(b, ib);
    if (a.scale == Scale::F && n_over_p.sign() == 0)
        throw std::domain_error("join: F-scale result would need p=inf");
    out.space = SpaceParam{a.scale, Location::interior, s, ExtExp::from_recip(n_over_p / Rat(ctx.n)),
                           ExtExp::from_recip(*mu)};
    return out;
}

}  // namespace fscalc
