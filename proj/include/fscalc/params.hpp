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

#include "fscalc/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fscalc {

/// An exponent p in (0, ∞], stored as its reciprocal 1/p so that p = ∞ is 0.
class ExtExp {
public:
    ExtExp() = default;

    static ExtExp from_recip(Rat recip) {
        if (recip.sign() < 0) throw std::invalid_argument("exponent reciprocal must be >= 0");
        ExtExp e;
        e.recip_ = std::move(recip);
        return e;
    }
    static ExtExp finite(const Rat& p) {
        if (p.sign() <= 0) throw std::invalid_argument("exponent must be > 0");
        return from_recip(Rat(1) / p);
    }
    static ExtExp infinity() { return {}; }

    const Rat& recip() const { return recip_; }
    bool is_infinite() const { return recip_.sign() == 0; }
    /// p itself; only valid for finite exponents.
    Rat value() const {
        if (is_infinite()) throw std::domain_error("exponent is infinite");
        return Rat(1) / recip_;
    }

    std::string str() const { return is_infinite() ? "inf" : value().str(); }

    friend bool operator==(const ExtExp&, const ExtExp&) = default;

private:
    Rat recip_;  // 0 encodes p = ∞
};

enum class Scale { B, F };
enum class Location { interior, boundary };

inline char scale_char(Scale s) { return s == Scale::B ? 'B' : 'F'; }

/// A point (scale, s, p, q) naming B^s_{p,q} or F^s_{p,q} over Ω̄ or Γ.
struct SpaceParam {
    Scale scale = Scale::F;
    Location location = Location::interior;
    Rat s;
    ExtExp p;
    ExtExp q;

    static SpaceParam make(Scale scale, Rat s, ExtExp p, ExtExp q, Location loc = Location::interior) {
        if (scale == Scale::F && p.is_infinite())
            throw std::invalid_argument("F-scale requires p<inf");
        if (loc == Location::boundary && scale != Scale::B)
            throw std::invalid_argument("boundary spaces are B-scale");
        return SpaceParam{scale, loc, std::move(s), std::move(p), std::move(q)};
    }

    bool interior() const { return location == Location::interior; }
    /// 1/p
    const Rat& lam() const { return p.recip(); }
    /// 1/q
    const Rat& mu() const { return q.recip(); }

    SpaceParam with_s(Rat v) const {
        auto c = *this;
        c.s = std::move(v);
        return c;
    }

    friend bool operator==(const SpaceParam&, const SpaceParam&) = default;
};

/// Geometric facts about the bounded smooth domain Ω ⊂ ℝⁿ.
struct DomainCtx {
    int n = 3;
    int boundary_components = 1;
    bool connected = true;

    static DomainCtx make(int n, int boundary_components = 1, bool connected = true) {
        if (n < 2) throw std::invalid_argument("dimension n must be >= 2");
        if (boundary_components < 1) throw std::invalid_argument("boundary component count must be >= 1");
        return {n, boundary_components, connected};
    }

    /// ½·δ_{n2}
    Rat half_kronecker() const { return n == 2 ? Rat(1, 2) : Rat(0); }
};

inline void require_interior(const SpaceParam& x, const char* what) {
    if (!x.interior()) throw std::invalid_argument(std::string(what) + ": boundary space not allowed here");
}

/// s − n/p. Boundary spaces carry the (n−1)-dimensional index and are refused unless
/// `boundary_opt_in` is set.
inline Rat sobolev_index(const SpaceParam& x, const DomainCtx& ctx, bool boundary_opt_in = false) {
    if (!x.interior()) {
        if (!boundary_opt_in) throw std::invalid_argument("boundary space has dimension n-1 index");
        return x.s - Rat(ctx.n - 1) * x.lam();
    }
    return x.s - Rat(ctx.n) * x.lam();
}

/// Outcome of a strict sector test. `on_boundary` separates the equality case,
/// which is always rejected.
struct SectorCheck {
    bool inside = false;
    bool on_boundary = false;
    Rat threshold;
};

inline SectorCheck strict_above(const Rat& s, Rat threshold) {
    auto c = s <=> threshold;
    return SectorCheck{c > 0, c == 0, std::move(threshold)};
}

/// k + max(1/p − 1, n/p − n): the class-k threshold.
inline Rat dk_threshold(const Rat& lam, int k, const DomainCtx& ctx) {
    return Rat(k) + max(lam - 1, Rat(ctx.n) * lam - Rat(ctx.n));
}

inline SectorCheck check_Dk(const SpaceParam& x, int k, const DomainCtx& ctx) {
    require_interior(x, "in_Dk");
    return strict_above(x.s, dk_threshold(x.lam(), k, ctx));
}

/// (s,p,q) ∈ 𝔻_k, i.e. s > k + max(1/p − 1, n/p − n).
inline bool in_Dk(const SpaceParam& x, int k, const DomainCtx& ctx) { return check_Dk(x, k, ctx).inside; }

inline SectorCheck check_dirichlet_sector(const SpaceParam& x, const DomainCtx& ctx) {
    require_interior(x, "dirichlet_sector");
    Rat n(ctx.n);
    return strict_above(x.s, max(Rat(1, 2), n * x.lam() - 1 + ctx.half_kronecker()));
}
inline bool dirichlet_sector(const SpaceParam& x, const DomainCtx& ctx) {
    return check_dirichlet_sector(x, ctx).inside;
}

inline SectorCheck check_neumann_sector(const SpaceParam& x, const DomainCtx& ctx) {
    require_interior(x, "neumann_sector");
    Rat n(ctx.n);
    return strict_above(x.s, max(x.lam() + 1, n * x.lam() - 1 + ctx.half_kronecker()));
}
inline bool neumann_sector(const SpaceParam& x, const DomainCtx& ctx) { return check_neumann_sector(x, ctx).inside; }

/// The subsector s > max(1, n/p − 1 + ½δ_{n2}) on which the sharp product route applies.
inline SectorCheck check_neumann_safe_subsector(const SpaceParam& x, const DomainCtx& ctx) {
    require_interior(x, "neumann_safe_subsector");
    Rat n(ctx.n);
    return strict_above(x.s, max(Rat(1), n * x.lam() - 1 + ctx.half_kronecker()));
}
inline bool neumann_safe_subsector(const SpaceParam& x, const DomainCtx& ctx) {
    return check_neumann_safe_subsector(x, ctx).inside;
}

namespace detail {
inline std::string sup(const std::string& t) { return t.size() == 1 ? t : "{" + t + "}"; }
}  // namespace detail

/// Classical name of the space when one of the standard identifications applies.
inline std::optional<std::string> identify_classical(const SpaceParam& x) {
    using detail::sup;
    if (!x.interior()) return std::nullopt;
    const Rat two_recip(1, 2);
    // B^s_{2,2} = F^s_{2,2} = H^s
    if (x.lam() == two_recip && x.mu() == two_recip) {
        if (x.s.sign() == 0) return std::string("H^0 = L_2");
        return "H^" + sup(x.s.str());
    }
    if (x.scale == Scale::B && x.p.is_infinite() && x.q.is_infinite() && x.s.sign() > 0)
        return "C^" + sup(x.s.str()) + "_*";
    if (x.scale == Scale::F && x.mu() == two_recip) {
        bool p_above_one = x.lam() < Rat(1);
        if (x.s.sign() == 0 && !p_above_one) return "h_" + sup(x.p.str());
        if (p_above_one) {
            auto name = "H^" + sup(x.s.str()) + "_" + sup(x.p.str());
            if (x.s.sign() == 0) name += " = L_" + sup(x.p.str());
            return name;
        }
    }
    if (x.scale == Scale::B && x.p == x.q && !x.p.is_infinite() && x.lam() < Rat(1) && x.s.sign() > 0 &&
        !x.s.is_integer())
        return "W^" + sup(x.s.str()) + "_" + sup(x.p.str());
    return std::nullopt;
}

// Space literals: `<scale>:<s>,<p>,<q>` with an optional `@bd` suffix for Γ.

inline ExtExp parse_exponent(std::string_view t) {
    if (t == "inf") return ExtExp::infinity();
    return ExtExp::finite(Rat::parse(t));
}

inline SpaceParam parse_space(std::string_view text) {
    auto bad = [&](const std::string& why) {
        return std::invalid_argument("malformed space literal '" + std::string(text) + "': " + why);
    };
    Location loc = Location::interior;
    std::string_view body = text;
    if (body.size() > 3 && body.substr(body.size() - 3) == "@bd") {
        loc = Location::boundary;
        body.remove_suffix(3);
    }
    if (body.size() < 3 || body[1] != ':' || (body[0] != 'B' && body[0] != 'F'))
        throw bad("expected <B|F>:<s>,<p>,<q>");
    Scale scale = body[0] == 'B' ? Scale::B : Scale::F;
    body.remove_prefix(2);
    auto c1 = body.find(',');
    if (c1 == std::string_view::npos) throw bad("missing p");
    auto c2 = body.find(',', c1 + 1);
    if (c2 == std::string_view::npos) throw bad("missing q");
    if (body.find(',', c2 + 1) != std::string_view::npos) throw bad("too many fields");
    try {
        Rat s = Rat::parse(body.substr(0, c1));
        ExtExp p = parse_exponent(body.substr(c1 + 1, c2 - c1 - 1));
        ExtExp q = parse_exponent(body.substr(c2 + 1));
        if (scale == Scale::F && p.is_infinite()) throw std::invalid_argument("F-scale requires p<inf");
        return SpaceParam::make(scale, std::move(s), std::move(p), std::move(q), loc);
    } catch (const std::invalid_argument& e) {
        if (std::string_view(e.what()).find("F-scale") != std::string_view::npos) throw;
        throw bad(e.what());
    }
}

inline std::string format_space(const SpaceParam& x) {
    std::string out;
    out += scale_char(x.scale);
    out += ':' + x.s.str() + ',' + x.p.str() + ',' + x.q.str();
    if (!x.interior()) out += "@bd";
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const SpaceParam& x) { return os << format_space(x); }

}  // namespace fscalc
