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

#include "fscalc/bootstrap.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace fscalc {

/// Maps the (n/p, s)-plane to integer pixels through one rational scale, so the
/// output never depends on floating-point formatting.
class PlaneViewport {
public:
    static constexpr std::int64_t kUnit = 80;
    static constexpr std::int64_t kMargin = 48;

    PlaneViewport(Rat x_max, Rat y_min, Rat y_max)
        : x_max_(std::move(x_max)), y_min_(std::move(y_min)), y_max_(std::move(y_max)) {}

    std::int64_t px(const Rat& x) const { return kMargin + (Rat(kUnit) * x).floor(); }
    std::int64_t py(const Rat& y) const { return kMargin + (Rat(kUnit) * (y_max_ - y)).floor(); }
    std::int64_t width() const { return 2 * kMargin + ceil(Rat(kUnit) * x_max_); }
    std::int64_t height() const { return 2 * kMargin + ceil(Rat(kUnit) * (y_max_ - y_min_)); }

    const Rat& x_max() const { return x_max_; }
    const Rat& y_min() const { return y_min_; }
    const Rat& y_max() const { return y_max_; }

private:
    Rat x_max_, y_min_, y_max_;
};

namespace detail {

struct PlanePoint {
    Rat x, y;
    friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

inline PlanePoint plane_point(const SpaceParam& sp, const DomainCtx& ctx) {
    return {Rat(ctx.n) * sp.lam(), sp.s};
}

// Vertices of the sector boundary s = f(n/p) over [0, x_max].
inline std::vector<PlanePoint> sector_boundary(Problem problem, const DomainCtx& ctx, const Rat& x_max) {
    Rat n(ctx.n);
    Rat c = ctx.half_kronecker();
    auto f = [&](const Rat& x) {
        if (problem == Problem::dirichlet) return max(Rat(1, 2), x - 1 + c);
        return max(x / n + 1, x - 1 + c);
    };
    Rat kink = problem == Problem::dirichlet ? Rat(3, 2) - c : (Rat(2) - c) * n / (n - 1);
    std::vector<Rat> xs{Rat(0), kink, n, x_max};
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<PlanePoint> out;
    for (const auto& x : xs)
        if (x <= x_max) out.push_back({x, f(x)});
    return out;
}

}  // namespace detail

/// Renders a trace in the (n/p, s)-plane as SVG 1.1.
///
/// Dashed: the sector boundary of the problem. Dotted: each nonlinear gain, from the
/// space of u to the space of the solution-operator image. Solid arrows: embeddings
/// and joins. `×` marks the spaces of u (start, target, joins); `∘` marks gains.
inline std::string render_trace_svg(const BootstrapTrace& t) {
    using detail::PlanePoint;
    const auto& ctx = t.ctx;
    const Rat n(ctx.n);

    std::vector<PlanePoint> crosses;  // spaces of u, deduplicated
    std::vector<PlanePoint> circles;  // gains
    std::vector<std::pair<PlanePoint, PlanePoint>> dotted, arrows;
    auto add_unique = [](std::vector<PlanePoint>& v, const PlanePoint& p) {
        if (std::find(v.begin(), v.end(), p) == v.end()) v.push_back(p);
    };
    auto pt = [&](const SpaceParam& sp) { return detail::plane_point(sp, ctx); };

    add_unique(crosses, pt(t.start));
    add_unique(crosses, pt(t.target));
    std::optional<SpaceParam> gain_source;
    for (const auto& s : t.steps) {
        switch (s.rule) {
            case StepRule::nonlinear_gain_standard:
                gain_source = s.input.front();
                break;
            case StepRule::parametrix_apply:
                if (s.output && gain_source) {
                    dotted.emplace_back(pt(*gain_source), pt(*s.output));
                    add_unique(circles, pt(*s.output));
                }
                break;
            case StepRule::embed:
                arrows.emplace_back(pt(s.input.front()), pt(*s.output));
                if (*s.output != t.target) add_unique(circles, pt(*s.output));
                break;
            case StepRule::join:
                arrows.emplace_back(pt(s.input.back()), pt(*s.output));
                add_unique(crosses, pt(*s.output));
                break;
            default:
                break;
        }
    }

    Rat x_max = n + 1, y_max = Rat(1), y_min = Rat(-1);
    for (const auto* v : {&crosses, &circles})
        for (const auto& p : *v) {
            x_max = max(x_max, p.x + 1);
            y_max = max(y_max, p.y + 1);
            y_min = min(y_min, p.y - 1);
        }
    x_max = Rat(ceil(x_max));
    y_max = Rat(ceil(y_max));
    y_min = Rat(y_min.floor());
    PlaneViewport vp(x_max, y_min, y_max);

    std::ostringstream o;
    auto xy = [&](const PlanePoint& p) { return std::to_string(vp.px(p.x)) + "," + std::to_string(vp.py(p.y)); };
    auto line = [&](const PlanePoint& a, const PlanePoint& b, const char* cls, const char* extra) {
        o << "<line class=\"" << cls << "\" x1=\"" << vp.px(a.x) << "\" y1=\"" << vp.py(a.y) << "\" x2=\""
          << vp.px(b.x) << "\" y2=\"" << vp.py(b.y) << "\"" << extra << "/>\n";
    };

    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << vp.width() << "\" height=\""
      << vp.height() << "\" viewBox=\"0 0 " << vp.width() << " " << vp.height() << "\">\n";
    o << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" "
         "markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>\n";
    o << "<title>" << to_string(t.problem) << " bootstrap " << format_space(t.start) << " to "
      << format_space(t.target) << " (n=" << ctx.n << ", eps=" << t.eps.str() << ", " << to_string(t.verdict.status)
      << ")</title>\n";

    // axes
    line({Rat(0), y_min}, {Rat(0), y_max}, "axis", " stroke=\"black\" marker-end=\"url(#arrow)\"");
    line({Rat(0), Rat(0)}, {x_max, Rat(0)}, "axis", " stroke=\"black\" marker-end=\"url(#arrow)\"");
    o << "<text class=\"axis-label\" x=\"" << vp.px(x_max) + 6 << "\" y=\"" << vp.py(Rat(0)) + 4
      << "\" font-size=\"14\">n/p</text>\n";
    o << "<text class=\"axis-label\" x=\"" << vp.px(Rat(0)) - 4 << "\" y=\"" << vp.py(y_max) - 8
      << "\" font-size=\"14\">s</text>\n";
    for (std::int64_t k = 1; Rat(k) < x_max; ++k) {
        o << "<line class=\"tick\" x1=\"" << vp.px(Rat(k)) << "\" y1=\"" << vp.py(Rat(0)) - 3 << "\" x2=\""
          << vp.px(Rat(k)) << "\" y2=\"" << vp.py(Rat(0)) + 3 << "\" stroke=\"black\"/>\n";
        o << "<text class=\"tick-label\" x=\"" << vp.px(Rat(k)) - 3 << "\" y=\"" << vp.py(Rat(0)) + 16
          << "\" font-size=\"11\">" << k << "</text>\n";
    }
    for (std::int64_t k = y_min.floor(); Rat(k) < y_max; ++k) {
        if (k == 0) continue;
        o << "<text class=\"tick-label\" x=\"" << vp.px(Rat(0)) - 20 << "\" y=\"" << vp.py(Rat(k)) + 4
          << "\" font-size=\"11\">" << k << "</text>\n";
    }

    // sector boundary
    o << "<polyline class=\"sector\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"6,4\" points=\"";
    bool first = true;
    for (const auto& p : detail::sector_boundary(t.problem, ctx, x_max)) {
        o << (first ? "" : " ") << xy(p);
        first = false;
    }
    o << "\"/>\n";
    if (t.problem == Problem::neumann) {
        // s = n/p − 1 and s = 1/p + 1
        line({Rat(0), Rat(-1)}, {x_max, x_max - 1}, "reference",
             " stroke=\"gray\" stroke-dasharray=\"1,3\"");
        line({Rat(0), Rat(1)}, {x_max, x_max / n + 1}, "reference", " stroke=\"gray\" stroke-dasharray=\"1,3\"");
    }
    o << "<text class=\"sector-label\" x=\"" << vp.px(Rat(1, 2)) << "\" y=\"" << vp.py(y_min) - 6
      << "\" font-size=\"12\">"
      << (t.problem == Problem::dirichlet ? "s=max(1/2, n/p-1" : "s=max(1/p+1, n/p-1")
      << (ctx.n == 2 ? "+1/2)" : ")") << "</text>\n";

    for (const auto& [a, b] : dotted)
        line(a, b, "gain", " stroke=\"black\" stroke-dasharray=\"2,3\"");
    for (const auto& [a, b] : arrows)
        if (a != b) line(a, b, "embedding", " stroke=\"black\" marker-end=\"url(#arrow)\"");

    for (const auto& p : circles)
        o << "<circle class=\"reduction\" cx=\"" << vp.px(p.x) << "\" cy=\"" << vp.py(p.y)
          << "\" r=\"4\" fill=\"none\" stroke=\"black\"/>\n";
    for (const auto& p : crosses) {
        auto cx = vp.px(p.x), cy = vp.py(p.y);
        o << "<g class=\"cross\"><line x1=\"" << cx - 5 << "\" y1=\"" << cy - 5 << "\" x2=\"" << cx + 5
          << "\" y2=\"" << cy + 5 << "\" stroke=\"black\"/><line x1=\"" << cx - 5 << "\" y1=\"" << cy + 5
          << "\" x2=\"" << cx + 5 << "\" y2=\"" << cy - 5 << "\" stroke=\"black\"/></g>\n";
    }
    auto label = [&](const SpaceParam& sp, const char* name) {
        auto p = pt(sp);
        o << "<text class=\"point-label\" x=\"" << vp.px(p.x) + 8 << "\" y=\"" << vp.py(p.y) - 8
          << "\" font-size=\"12\">" << name << " " << format_space(sp) << "</text>\n";
    };
    label(t.start, "start");
    if (t.target != t.start) label(t.target, "target");
    o << "</svg>\n";
    return o.str();
}

}  // namespace fscalc
