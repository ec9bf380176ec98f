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

// Command dispatch for the `fscalc` tool. Exit codes: 0 accept/certified,
// 1 reject (one-line reason on stderr), 2 usage error.

#include "fscalc/bootstrap.hpp"
#include "fscalc/embed.hpp"
#include "fscalc/green.hpp"
#include "fscalc/params.hpp"
#include "fscalc/product.hpp"
#include "fscalc/svg.hpp"
#include "fscalc/trace_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fscalc::cli {

inline constexpr int kAccept = 0;
inline constexpr int kReject = 1;
inline constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Outcome {
    int code = kAccept;
    std::string reason;  // one line, for code != 0
    Json json;
    std::string human;
};

struct Options {
    int n = 3;
    int boundary_components = 1;
    bool disconnected = false;
    std::string eps;
    int k = 0;
    std::string space, a, b, target, start, op, problem = "dirichlet";
    std::string trace_path, out_path, svg_path, trace_out;
    bool sharp = false, g_zero = false, flux_zero = false, json = false, boundary_index = false;
    int max_steps = kDefaultMaxSteps;
    std::string batch;
};

inline std::string default_eps() {
    if (const char* env = std::getenv("FSCALC_EPS"); env && *env) return env;
    return "1/64";
}

namespace detail {

inline SpaceParam space_arg(const std::string& text, const char* flag) {
    if (text.empty()) throw UsageError(std::string("missing --") + flag);
    try {
        return parse_space(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

inline DomainCtx ctx_arg(const Options& o) {
    try {
        return DomainCtx::make(o.n, o.boundary_components, !o.disconnected);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

inline Rat eps_arg(const Options& o) {
    try {
        Rat e = Rat::parse(o.eps);
        if (e.sign() <= 0) throw UsageError("--eps must be > 0");
        return e;
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--eps: ") + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << body;
}

inline Json space_json(const SpaceParam& x) { return format_space(x); }

inline Outcome sector_outcome(const SectorCheck& c, const std::string& what) {
    Outcome r;
    r.json = {{"inside", c.inside}, {"boundary_of_sector", c.on_boundary}, {"threshold", c.threshold.str()}};
    r.human = what + (c.inside ? ": yes" : ": no") + " (threshold s > " + c.threshold.str() + ")";
    if (!c.inside) {
        r.code = kReject;
        r.reason = c.on_boundary ? "boundary of sector: s equals threshold " + c.threshold.str()
                                 : "below threshold " + c.threshold.str();
    }
    return r;
}

inline Outcome cmd_dk(const Options& o) {
    auto x = space_arg(o.space, "space");
    if (!x.interior()) throw UsageError("dk needs an interior space");
    auto r = sector_outcome(check_Dk(x, o.k, ctx_arg(o)), format_space(x) + " in D_" + std::to_string(o.k));
    r.json["command"] = "dk";
    return r;
}

inline Outcome cmd_sector(const Options& o) {
    auto x = space_arg(o.space, "space");
    if (!x.interior()) throw UsageError("sector needs an interior space");
    auto ctx = ctx_arg(o);
    SectorCheck c;
    if (o.problem == "dirichlet") c = check_dirichlet_sector(x, ctx);
    else if (o.problem == "neumann") c = check_neumann_sector(x, ctx);
    else if (o.problem == "safe") c = check_neumann_safe_subsector(x, ctx);
    else throw UsageError("--problem must be dirichlet, neumann or safe");
    auto r = sector_outcome(c, format_space(x) + " in " + o.problem + " sector");
    r.json["command"] = "sector";
    return r;
}

inline Outcome cmd_sobolev(const Options& o) {
    auto x = space_arg(o.space, "space");
    Outcome r;
    try {
        auto v = sobolev_index(x, ctx_arg(o), o.boundary_index);
        r.json = {{"command", "sobolev"}, {"index", v.str()}};
        r.human = "s - n/p = " + v.str();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return r;
}

inline Outcome cmd_classify(const Options& o) {
    auto x = space_arg(o.space, "space");
    auto name = identify_classical(x);
    Outcome r;
    r.json = {{"command", "classify"}, {"name", name ? Json(*name) : Json(nullptr)}};
    r.human = name ? format_space(x) + " = " + *name : format_space(x) + ": no classical identification";
    if (!name) {
        r.code = kReject;
        r.reason = "no classical identification";
    }
    return r;
}

inline void require_same_scale(const SpaceParam& a, const SpaceParam& b) {
    if (!a.interior() || !b.interior()) throw UsageError("interior spaces required");
    if (a.scale != b.scale) throw UsageError("scale mismatch (mixed B/F)");
}

inline Outcome cmd_embed(const Options& o) {
    auto a = space_arg(o.a, "a"), b = space_arg(o.b, "b");
    require_same_scale(a, b);
    auto v = embeds(a, b, ctx_arg(o));
    Outcome r;
    r.json = {{"command", "embed"},
              {"holds", v.holds},
              {"rule", v.rule ? Json(to_string(*v.rule)) : Json(nullptr)},
              {"strictness_note", v.strictness_note}};
    r.human = format_space(a) + (v.holds ? " embeds in " : " does not embed in ") + format_space(b) +
              (v.rule ? std::string(" [") + to_string(*v.rule) + "]" : "");
    if (!v.holds) {
        r.code = kReject;
        r.reason = "no embedding derivable";
    }
    return r;
}

inline Outcome cmd_join(const Options& o) {
    auto a = space_arg(o.a, "a"), b = space_arg(o.b, "b");
    require_same_scale(a, b);
    auto j = join(a, b, ctx_arg(o));
    Outcome r;
    r.json = {{"command", "join"}, {"join", space_json(j.space)}, {"clamped", j.clamped}};
    r.human = "join = " + format_space(j.space) + (j.clamped ? " (clamped)" : "");
    return r;
}

inline Outcome cmd_product(const Options& o) {
    auto a = space_arg(o.a, "a"), b = space_arg(o.b, "b");
    require_same_scale(a, b);
    auto ctx = ctx_arg(o);
    Outcome r;
    bool defined = product_defined(a, b, ctx);
    r.json = {{"command", "product"}, {"defined", defined}};
    if (!defined) {
        r.code = kReject;
        r.reason = "product undefined: s0+s1 <= max(0, n/p0+n/p1-n)";
        r.human = "product undefined";
        return r;
    }
    auto opt = optimal_target(a, b, ctx);
    r.json["optimal_target"] = space_json(opt);
    r.human = "optimal receiving space " + format_space(opt);
    if (!o.target.empty()) {
        auto t = space_arg(o.target, "target");
        require_same_scale(a, t);
        auto v = product_bounded(a, b, t, ctx);
        Json failed = Json::array();
        for (auto c : v.failed_conditions) failed.push_back(to_string(c));
        r.json["bounded"] = v.bounded;
        r.json["failed_conditions"] = failed;
        r.json["conservative_b_scale"] = v.conservative_b_scale;
        r.human += std::string("; into ") + format_space(t) + ": " + (v.bounded ? "bounded" : "not bounded");
        if (!v.bounded) {
            r.code = kReject;
            r.reason = "not bounded, failed " + failed.dump();
        }
    }
    return r;
}

inline Outcome cmd_pstar(const Options& o) {
    auto a = space_arg(o.a, "a"), b = space_arg(o.b, "b");
    require_same_scale(a, b);
    auto ctx = ctx_arg(o);
    Outcome r;
    if (!product_defined(a, b, ctx)) {
        r.code = kReject;
        r.reason = "product undefined";
        r.json = {{"command", "pstar"}, {"defined", false}};
        return r;
    }
    auto ps = p_star(a, b, ctx);
    r.json = {{"command", "pstar"}, {"p_star", ps.str()}, {"n_over_p_star", (Rat(ctx.n) * ps.recip()).str()}};
    r.human = "p* = " + ps.str() + " (n/p* = " + (Rat(ctx.n) * ps.recip()).str() + ")";
    return r;
}

inline Outcome cmd_bmap(const Options& o) {
    auto x = space_arg(o.space, "space");
    if (!x.interior()) throw UsageError("bmap needs an interior space");
    auto ctx = ctx_arg(o);
    auto eps = eps_arg(o);
    Outcome r;
    auto chk = check_dirichlet_sector(x, ctx);
    if (!chk.inside) {
        r.code = kReject;
        r.reason = std::string(chk.on_boundary ? "boundary of sector" : "sector violation") + ": s > " +
                   chk.threshold.str() + " required";
        r.json = {{"command", "bmap"}, {"sector", false}};
        return r;
    }
    auto out = o.sharp ? map_B_sharp(x, ctx) : map_B_standard(x, ctx, eps);
    auto d = delta(x, ctx, eps);
    r.json = {{"command", "bmap"},
              {"mode", o.sharp ? "sharp" : "standard"},
              {"image", space_json(out)},
              {"delta", d.value.str()},
              {"at_critical", d.at_critical},
              {"eps", eps.str()}};
    r.human = "B(u) in " + format_space(out) + " (delta = " + d.value.str() + ")";
    return r;
}

inline Outcome cmd_op_apply(const Options& o) {
    auto x = space_arg(o.space, "space");
    const OperatorSpec* op;
    try {
        op = &find_operator(o.op);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    OperatorResult res;
    try {
        res = apply_operator(*op, x, ctx_arg(o));
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    Outcome r;
    if (auto* v = std::get_if<ClassViolation>(&res)) {
        r.code = kReject;
        r.reason = "class violation: " + v->op + " of class " + std::to_string(v->op_class) + " needs s > " +
                   v->threshold.str() + (v->on_boundary ? " (boundary of sector)" : "");
        r.json = {{"command", "op-apply"}, {"violation", true}, {"threshold", v->threshold.str()}};
        return r;
    }
    const auto& img = std::get<SpaceParam>(res);
    r.json = {{"command", "op-apply"}, {"violation", false}, {"image", space_json(img)}};
    r.human = std::string(op->name) + " maps " + format_space(x) + " to " + format_space(img);
    return r;
}

inline std::string trace_summary(const BootstrapTrace& t) {
    std::ostringstream s;
    s << to_string(t.problem) << " bootstrap " << format_space(t.start) << " -> " << format_space(t.target)
      << " (n=" << t.ctx.n << ", eps=" << t.eps << ")\n";
    for (const auto& st : t.steps) {
        s << "  [" << st.index << "] " << to_string(st.rule);
        if (st.op) s << " " << *st.op;
        s << ":";
        for (const auto& in : st.input) s << " " << format_space(in);
        if (st.output) s << " => " << format_space(*st.output);
        if (st.violation) s << " => class violation (s > " << st.violation->threshold << " required)";
        if (st.iteration_case) s << " {" << to_string(*st.iteration_case) << "}";
        if (st.eps_used) s << " {eps}";
        s << "\n";
    }
    s << "verdict: " << to_string(t.verdict.status);
    if (t.verdict.reason != ReasonCode::none) s << " (" << to_string(t.verdict.reason) << ")";
    s << ": " << t.verdict.detail;
    return s.str();
}

inline Outcome trace_outcome(const BootstrapTrace& t, const Options& o) {
    Outcome r;
    r.json = to_json(t);
    r.human = trace_summary(t);
    if (!o.trace_out.empty()) write_file(o.trace_out, r.json.dump(2) + "\n");
    if (!o.svg_path.empty()) write_file(o.svg_path, render_trace_svg(t));
    if (!t.certified()) {
        r.code = kReject;
        r.reason = std::string(to_string(t.verdict.status)) + " (" + to_string(t.verdict.reason) +
                   "): " + t.verdict.detail;
    }
    return r;
}

inline Outcome cmd_bootstrap(const Options& o) {
    Problem problem;
    try {
        problem = parse_problem(o.problem);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    auto start = space_arg(o.start, "start"), target = space_arg(o.target, "target");
    if (o.max_steps < 1) throw UsageError("--max-steps must be >= 1");
    auto t = run_bootstrap(problem, start, target, ctx_arg(o), eps_arg(o), o.max_steps);
    auto r = trace_outcome(t, o);
    auto data = canonical_data_spaces(problem, target);
    r.human += "\ndata spaces: f in " + format_space(data.f) + ", phi in " + format_space(data.phi);
    return r;
}

inline Outcome cmd_ns_exist(const Options& o) {
    auto x = space_arg(o.space, "space");
    if (!x.interior()) throw UsageError("ns-exist needs an interior space");
    NSQuery q{ctx_arg(o), x, o.g_zero, o.flux_zero};
    auto v = ns_existence(q);
    Outcome r;
    Json reasons = Json::array();
    for (auto c : v.reasons) reasons.push_back(to_string(c));
    r.json = {{"command", "ns-exist"},
              {"accepted", v.accepted},
              {"condition", v.condition ? Json(*v.condition) : Json(nullptr)},
              {"reasons", reasons},
              {"detail", v.detail},
              {"spaces",
               {{"u", space_json(v.u)},
                {"f", space_json(v.f)},
                {"g", space_json(v.g)},
                {"phi", space_json(v.phi)},
                {"pressure", space_json(v.pressure)}}}};
    r.human = std::string(v.accepted ? "solvable: " : "not certified: ") + v.detail + "\n  u in " +
              format_space(v.u) + ", f in " + format_space(v.f) + ", phi in " + format_space(v.phi) +
              ", pressure in " + format_space(v.pressure);
    if (!v.accepted) {
        r.code = kReject;
        r.reason = v.detail;
    }
    return r;
}

inline BootstrapTrace load_trace(const std::string& path) {
    if (path.empty()) throw UsageError("missing --trace");
    auto text = read_file(path);
    try {
        return trace_from_json(Json::parse(text));
    } catch (const std::exception& e) {
        throw UsageError(std::string("malformed trace: ") + e.what());
    }
}

inline Outcome cmd_render(const Options& o) {
    auto t = load_trace(o.trace_path);
    Outcome r;
    auto svg = render_trace_svg(t);
    if (o.out_path.empty()) {
        r.human = svg;
    } else {
        write_file(o.out_path, svg);
        r.human = "wrote " + o.out_path;
    }
    r.json = {{"command", "render"}, {"bytes", svg.size()}};
    return r;
}

inline Outcome cmd_replay(const Options& o) {
    auto t = load_trace(o.trace_path);
    auto rep = replay(t);
    Outcome r;
    r.json = {{"command", "replay"}, {"valid", rep.ok}, {"failed_index", rep.failed_index}, {"message", rep.message}};
    r.human = rep.ok ? "trace replays: " + std::string(to_string(t.verdict.status))
                     : "replay failed at step " + std::to_string(rep.failed_index) + ": " + rep.message;
    if (!rep.ok) {
        r.code = kReject;
        r.reason = r.human;
    }
    return r;
}

}  // namespace detail

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

namespace detail {

inline std::vector<std::string> batch_args(const Json& q) {
    if (!q.is_object() || !q.contains("command")) throw UsageError("batch entries need a \"command\" field");
    std::vector<std::string> argv{q["command"].get<std::string>()};
    for (const auto& [key, val] : q.items()) {
        if (key == "command") continue;
        if (val.is_boolean()) {
            if (val.get<bool>()) argv.push_back("--" + key);
        } else if (val.is_string()) {
            argv.push_back("--" + key);
            argv.push_back(val.get<std::string>());
        } else if (val.is_number_integer()) {
            argv.push_back("--" + key);
            argv.push_back(std::to_string(val.get<long long>()));
        } else {
            throw UsageError("unsupported value for \"" + key + "\" in batch entry");
        }
    }
    argv.push_back("--json");
    return argv;
}

inline int run_batch(const std::string& path, std::ostream& out, std::ostream& err) {
    Json queries;
    try {
        queries = Json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed batch file: ") + e.what());
    }
    if (!queries.is_array()) throw UsageError("batch file must hold a JSON array");
    Json results = Json::array();
    int worst = kAccept;
    for (const auto& q : queries) {
        auto argv = batch_args(q);
        std::ostringstream o, e;
        int code = run(argv, o, e);
        Json entry;
        entry["command"] = argv.front();
        entry["exit"] = code;
        if (code != kUsage) {
            try {
                entry["result"] = Json::parse(o.str());
            } catch (const nlohmann::json::exception&) {
                entry["result"] = o.str();
            }
        }
        if (code != kAccept) entry["reason"] = e.str().empty() ? "" : e.str().substr(0, e.str().find('\n'));
        results.push_back(entry);
        worst = std::max(worst, code);
    }
    out << results.dump(2) << "\n";
    if (worst != kAccept) err << "batch: at least one query " << (worst == kUsage ? "was malformed" : "rejected") << "\n";
    return worst;
}

}  // namespace detail

/// Runs one command line (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Function-space parameter calculus and regularity bootstrap certifier", "fscalc"};
    app.require_subcommand(0, 1);
    Options o;
    o.eps = default_eps();
    app.add_option("--batch", o.batch, "Run a JSON array of queries");

    auto add_ctx = [&](CLI::App* c) {
        c->add_option("--n", o.n, "Dimension n >= 2");
        c->add_option("--N", o.boundary_components, "Number of boundary components");
        c->add_flag("--json", o.json, "Machine-readable output");
    };
    auto add_eps = [&](CLI::App* c) { c->add_option("--eps", o.eps, "Critical-line epsilon (rational)"); };

    auto* dk = app.add_subcommand("dk", "Test (s,p,q) in D_k");
    add_ctx(dk);
    dk->add_option("--k", o.k)->required();
    dk->add_option("--space", o.space)->required();

    auto* sector = app.add_subcommand("sector", "Test the dirichlet, neumann or safe sector");
    add_ctx(sector);
    sector->add_option("--problem", o.problem);
    sector->add_option("--space", o.space)->required();

    auto* sob = app.add_subcommand("sobolev", "Sobolev index s - n/p");
    add_ctx(sob);
    sob->add_option("--space", o.space)->required();
    sob->add_flag("--boundary-index", o.boundary_index, "Use n-1 for boundary spaces");

    auto* cls = app.add_subcommand("classify", "Classical name of a space");
    cls->add_flag("--json", o.json);
    cls->add_option("--space", o.space)->required();

    auto* emb = app.add_subcommand("embed", "Decide a -> b");
    add_ctx(emb);
    emb->add_option("--a", o.a)->required();
    emb->add_option("--b", o.b)->required();

    auto* jn = app.add_subcommand("join", "Least space containing a and b");
    add_ctx(jn);
    jn->add_option("--a", o.a)->required();
    jn->add_option("--b", o.b)->required();

    auto* prod = app.add_subcommand("product", "Pointwise product a x b");
    add_ctx(prod);
    prod->add_option("--a", o.a)->required();
    prod->add_option("--b", o.b)->required();
    prod->add_option("--target", o.target);

    auto* ps = app.add_subcommand("pstar", "Optimal integrability exponent p*");
    add_ctx(ps);
    ps->add_option("--a", o.a)->required();
    ps->add_option("--b", o.b)->required();

    auto* bm = app.add_subcommand("bmap", "Space receiving u d1 u");
    add_ctx(bm);
    add_eps(bm);
    bm->add_option("--space", o.space)->required();
    bm->add_flag("--sharp", o.sharp, "Use the sharp route F^{s-1}_{p*,q}");

    auto* opa = app.add_subcommand("op-apply", "Apply a catalog operator");
    add_ctx(opa);
    opa->add_option("--op", o.op)->required();
    opa->add_option("--space", o.space)->required();

    auto* boot = app.add_subcommand("bootstrap", "Certify a regularity bootstrap");
    add_ctx(boot);
    add_eps(boot);
    boot->add_option("--problem", o.problem);
    boot->add_option("--start", o.start)->required();
    boot->add_option("--target", o.target)->required();
    boot->add_option("--max-steps", o.max_steps);
    boot->add_option("--emit-svg", o.svg_path, "Write the diagram");
    boot->add_option("--emit-trace", o.trace_out, "Write the trace JSON");

    auto* ns = app.add_subcommand("ns-exist", "Navier-Stokes existence conditions");
    add_ctx(ns);
    ns->add_option("--space", o.space)->required();
    ns->add_flag("--g-zero", o.g_zero);
    ns->add_flag("--flux-zero", o.flux_zero);
    ns->add_flag("--disconnected", o.disconnected);

    auto* rnd = app.add_subcommand("render", "Render a trace JSON as SVG");
    rnd->add_option("--trace", o.trace_path)->required();
    rnd->add_option("--out", o.out_path);
    rnd->add_flag("--json", o.json);

    auto* rep = app.add_subcommand("replay", "Validate a trace JSON step by step");
    rep->add_option("--trace", o.trace_path)->required();
    rep->add_flag("--json", o.json);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kAccept;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (!o.batch.empty()) return detail::run_batch(o.batch, out, err);
        Outcome r;
        if (dk->parsed()) r = detail::cmd_dk(o);
        else if (sector->parsed()) r = detail::cmd_sector(o);
        else if (sob->parsed()) r = detail::cmd_sobolev(o);
        else if (cls->parsed()) r = detail::cmd_classify(o);
        else if (emb->parsed()) r = detail::cmd_embed(o);
        else if (jn->parsed()) r = detail::cmd_join(o);
        else if (prod->parsed()) r = detail::cmd_product(o);
        else if (ps->parsed()) r = detail::cmd_pstar(o);
        else if (bm->parsed()) r = detail::cmd_bmap(o);
        else if (opa->parsed()) r = detail::cmd_op_apply(o);
        else if (boot->parsed()) r = detail::cmd_bootstrap(o);
        else if (ns->parsed()) r = detail::cmd_ns_exist(o);
        else if (rnd->parsed()) r = detail::cmd_render(o);
        else if (rep->parsed()) r = detail::cmd_replay(o);
        else {
            err << "usage error: no command given (try --help)\n";
            return kUsage;
        }
        if (o.json) out << r.json.dump(2) << "\n";
        else if (!r.human.empty()) out << r.human << (r.human.back() == '\n' ? "" : "\n");
        if (r.code != kAccept) err << "reject: " << r.reason << "\n";
        return r.code;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace fscalc::cli
