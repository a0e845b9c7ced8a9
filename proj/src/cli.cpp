#include "lnd/cli.hpp"

#include "lnd/examples.hpp"
#include "lnd/normal_form.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <regex>

namespace lnd::cli {

using json = nlohmann::ordered_json;

namespace {

const std::vector<std::string> kXYZ{"X", "Y", "Z"};

const char* status_name(int code) {
    switch (code) {
    case kOk: return "ok";
    case kCheckFailed: return "check_failed";
    case kInputError: return "input_error";
    case kBoundExceeded: return "bound_exceeded";
    }
    return "unknown";
}

int code_for(ErrorKind k) {
    switch (k) {
    case ErrorKind::BoundExceeded: return kBoundExceeded;
    case ErrorKind::SyntaxError:
    case ErrorKind::UndeclaredIdentifier:
    case ErrorKind::ArityMismatch:
    case ErrorKind::InvalidArgument:
    case ErrorKind::ZeroInput:
    case ErrorKind::DimensionError:
    case ErrorKind::UnsupportedRing:
    case ErrorKind::RingMismatch:
    case ErrorKind::DivisorZero:
    case ErrorKind::BothZero: return kInputError;
    default: return kCheckFailed;
    }
}

std::string ring_name(RingId r) {
    switch (r) {
    case RingId::Q: return "Q";
    case RingId::PolyT: return "Q[t]";
    case RingId::Circle: return "circle";
    }
    return "?";
}

json session_inputs(const SessionSpec& spec, const Request& req) {
    json in;
    in["ring"] = ring_name(spec.ring);
    in["vars"] = spec.vars;
    in["weights"] = spec.weights;
    const Derivation D = spec.derivation();
    json d = json::object();
    for (std::size_t i = 0; i < spec.vars.size(); ++i) d[spec.vars[i]] = D.image(i).str(spec.vars);
    in["derivation"] = d;
    in["bound"] = req.bound;
    return in;
}

Response respond(const Request& req, json inputs, json result, json witnesses, int code, std::string status = {}) {
    Response r;
    r.exit_code = code;
    r.json["command"] = req.command;
    r.json["inputs"] = std::move(inputs);
    r.json["result"] = std::move(result);
    r.json["witnesses"] = std::move(witnesses);
    r.json["status"] = status.empty() ? status_name(code) : status;
    r.json["version"] = kVersion;
    return r;
}

json image_map(const Derivation& D, const std::vector<std::string>& names) {
    json out = json::object();
    for (std::size_t i = 0; i < D.nvars(); ++i) out[names[i]] = D.image(i).str(names);
    return out;
}

LinearForm linear_form(const SessionSpec& spec, const std::string& text) {
    const Poly f = spec.poly(text);
    Row row;
    for (std::size_t i = 0; i < f.nvars(); ++i) {
        ExpVec e(f.nvars());
        e[i] = 1;
        row.push_back(f.coeff(e));
    }
    if (f.is_zero() || f.total_degree() != 1 || f.size() != static_cast<std::size_t>(std::count_if(row.begin(), row.end(), [](const RingElem& c) { return !c.is_zero(); })))
        throw Error(ErrorKind::InvalidArgument, "--x must be a nonzero linear form, got " + text);
    return LinearForm{row};
}

// The kernel form X and the potential P with D = Delta_(X, P).
std::pair<LinearForm, Poly> normal_form_inputs(const SessionSpec& spec, const Request& req, const Derivation& D, json& inputs) {
    LinearForm X;
    if (req.x) {
        X = linear_form(spec, *req.x);
    } else {
        const LinearFiltration filt = linear_filtration(D, req.bound);
        if (filt.strata.empty() || filt.strata.front().dim != 1)
            throw Error(ErrorKind::NoLinearKernel, "the linear kernel of D is not one-dimensional; pass --x");
        X = filt.strata.front().basis.front();
    }
    inputs["X"] = X.str(spec.vars);
    Poly P;
    if (!req.exprs.empty()) {
        P = spec.poly(req.exprs.front());
        inputs["P_source"] = "given";
    } else {
        const auto found = jacobian_potential(D, X);
        if (!found) throw Error(ErrorKind::ShapeViolation, "D is not of the form Delta_(X, P)");
        P = *found;
        inputs["P_source"] = "recovered from D";
    }
    inputs["P"] = P.str(spec.vars);
    return {X, P};
}

json coordinate_map(const std::vector<LinearForm>& coords, const std::vector<std::string>& names) {
    json out = json::object();
    for (std::size_t i = 0; i < coords.size(); ++i) out[kXYZ[i]] = coords[i].str(names);
    return out;
}

std::size_t var_index(const SessionSpec& spec, const std::string& name) {
    const auto it = std::find(spec.vars.begin(), spec.vars.end(), name);
    if (it != spec.vars.end()) return static_cast<std::size_t>(it - spec.vars.begin());
    if (!name.empty() && std::all_of(name.begin(), name.end(), ::isdigit)) {
        const auto i = std::stoul(name);
        if (i < spec.vars.size()) return i;
    }
    throw Error(ErrorKind::UndeclaredIdentifier, "unknown variable '" + name + "' in --vars");
}

Response run_verify(const Request& req) {
    json inputs;
    inputs["example"] = req.example;
    if (req.d) inputs["d"] = *req.d;
    if (req.p) inputs["p"] = *req.p;
    if (req.q) inputs["q"] = *req.q;
    inputs["bound"] = req.bound;

    std::vector<VerificationReport> reports;
    const Poly Y = Poly::variable(RingId::Q, 3, 1);
    if (req.example == "1") {
        reports.push_back(verify_example1(req.bound));
    } else if (req.example == "2" || req.example == "3") {
        std::vector<long> ds;
        if (req.d) ds = {*req.d};
        else ds = req.example == "2" ? std::vector<long>{0, 1, 2, 3} : std::vector<long>{0, 1, 2};
        for (long d : ds) reports.push_back(req.example == "2" ? verify_example2(d, req.bound) : verify_example3(d, req.bound));
    } else if (req.example == "tr") {
        const long d = req.d.value_or(1);
        if (d < 0) throw Error(ErrorKind::InvalidArgument, "--d must be nonnegative");
        reports.push_back(verify_instance(build_tr_instance(d, Y.pow(static_cast<unsigned>(d + 1)), Rational(1)), req.bound));
    } else if (req.example == "ntr") {
        const long p = req.p.value_or(2), q = req.q.value_or(2);
        if (p < 2 || q < 2) throw Error(ErrorKind::InvalidArgument, "--p and --q must be at least 2");
        std::vector<Rational> c(static_cast<std::size_t>(p), Rational(0));
        c.back() = Rational(1);
        reports.push_back(verify_instance(build_ntr_instance(p, q, Y.pow(static_cast<unsigned>(q)), c), req.bound));
    } else {
        throw Error(ErrorKind::InvalidArgument, "unknown example '" + req.example + "'");
    }

    json instances = json::array();
    json witnesses = json::object();
    bool all = true;
    Response r;
    for (const auto& rep : reports) {
        json inst;
        inst["instance"] = rep.instance;
        inst["pass"] = rep.pass();
        json checks = json::array();
        json wit = json::object();
        for (const auto& c : rep.checks) {
            checks.push_back({{"name", c.name}, {"pass", c.pass}});
            wit[c.name] = c.witness;
            if ((c.name == "nilpotence_orders" || c.name == "nilpotent") && json::accept(c.witness))
                inst["orders"] = json::parse(c.witness);
            r.summary.push_back(std::string(c.pass ? "PASS " : "FAIL ") + rep.instance + " " + c.name + ": " + c.witness);
        }
        inst["checks"] = checks;
        json asserted = json::array();
        for (const auto& a : rep.asserted) {
            asserted.push_back({{"claim", a}, {"status", "asserted, not machine-checked"}});
            r.summary.push_back("NOTE " + rep.instance + " asserted, not machine-checked: " + a);
        }
        inst["asserted"] = asserted;
        instances.push_back(inst);
        witnesses[rep.instance] = wit;
        all = all && rep.pass();
    }
    json result;
    result["pass"] = all;
    result["instances"] = instances;
    auto summary = std::move(r.summary);
    r = respond(req, inputs, result, witnesses, all ? kOk : kCheckFailed);
    r.summary = std::move(summary);
    return r;
}

Response run_session_command(const SessionSpec& spec, const Request& req) {
    json inputs = session_inputs(spec, req);
    const Derivation D = spec.derivation();
    const auto& names = spec.vars;
    const std::string& cmd = req.command;

    auto expr_arg = [&](std::size_t k) {
        const Poly f = spec.poly(req.exprs.at(k));
        inputs["args"].push_back(f.str(names));
        return f;
    };

    if (cmd == "nilpotent") {
        const NilpotenceCert cert = certify_nilpotent(D, req.bound);
        json orders = json::object();
        for (std::size_t i = 0; i < names.size(); ++i)
            orders[names[i]] = cert.orders[i] ? json(*cert.orders[i]) : json(nullptr);
        json witnesses = json::object();
        if (cert.failing_var) {
            witnesses["failing_var"] = names[*cert.failing_var];
            witnesses["D^bound"] = cert.witness.str(names);
        }
        return respond(req, inputs, {{"certified", cert.certified}, {"orders", orders}}, witnesses,
                       cert.certified ? kOk : kBoundExceeded);
    }
    if (cmd == "degd") {
        const Poly f = expr_arg(0);
        const unsigned n = deg_d(D, f, req.bound);
        const Poly last = d_power(D, f, n);
        return respond(req, inputs, n, {{"D^n(f)", last.str(names)}, {"D^(n+1)(f)", d_apply(D, last).str(names)}}, kOk);
    }
    if (cmd == "homogeneity") {
        const auto h = homogeneity_degree(D, spec.weights);
        json degs = json::object();
        for (std::size_t i = 0; i < names.size(); ++i) {
            const auto w = weighted_degree(D.image(i), spec.weights);
            degs[names[i]] = !D.image(i).is_zero() && is_homogeneous(D.image(i), spec.weights) ? json(*w) : json(nullptr);
        }
        return respond(req, inputs, h ? json(*h) : json(nullptr), {{"image_degrees", degs}}, h ? kOk : kCheckFailed);
    }
    if (cmd == "kernel") {
        const Poly f = expr_arg(0);
        const Poly Df = d_apply(D, f);
        return respond(req, inputs, Df.is_zero(), {{"D(f)", Df.str(names)}}, Df.is_zero() ? kOk : kCheckFailed);
    }
    if (cmd == "slice") {
        const Poly f = expr_arg(0);
        const Poly Df = d_apply(D, f);
        const Poly D2f = d_apply(D, Df);
        const bool ok = !Df.is_zero() && D2f.is_zero();
        return respond(req, inputs, ok, {{"D(f)", Df.str(names)}, {"D^2(f)", D2f.str(names)}}, ok ? kOk : kCheckFailed);
    }
    if (cmd == "jacobian") {
        const Poly F = expr_arg(0), G = expr_arg(1);
        const Derivation J = jacobian_derivation(F, G);
        const Poly JF = d_apply(J, F), JG = d_apply(J, G);
        const bool ok = JF.is_zero() && JG.is_zero();
        return respond(req, inputs, image_map(J, names), {{"Delta(F)", JF.str(names)}, {"Delta(G)", JG.str(names)}},
                       ok ? kOk : kCheckFailed);
    }
    if (cmd == "filtration") {
        const LinearFiltration filt = linear_filtration(D, req.bound);
        json strata = json::array();
        for (const auto& s : filt.strata) {
            json basis = json::array();
            for (const auto& f : s.basis) basis.push_back(f.str(names));
            strata.push_back({{"m", s.m}, {"dim", s.dim}, {"basis", basis}});
        }
        return respond(req, inputs, {{"jumps", filt.jumps()}, {"strata", strata}}, json::object(), kOk);
    }
    if (cmd == "triple") {
        const auto t = strict_triple(D, req.bound);
        if (!t) return respond(req, inputs, nullptr, {{"reason", "fewer jumps than variables"}}, kCheckFailed);
        json forms = json::array();
        json checks = json::object();
        for (std::size_t i = 0; i < t->forms.size(); ++i) {
            const Poly L = t->forms[i].to_poly(D.ring());
            forms.push_back(t->forms[i].str(names));
            checks[t->forms[i].str(names)] = deg_d(D, L, req.bound);
        }
        return respond(req, inputs, {{"forms", forms}, {"degrees", t->degrees}}, {{"deg_D", checks}}, kOk);
    }
    if (cmd == "rank") {
        const RankBound rb = rank_upper(D);
        json wit = json::array();
        for (const auto& w : rb.witnesses) {
            json item{{"form", w.form.str(names)},
                      {"status", w.status == FormStatus::Certified ? "certified" : "undecided"},
                      {"reason", w.reason}};
            if (!w.bezout.empty()) {
                json b = json::array();
                for (const auto& u : w.bezout) b.push_back(u.str());
                item["bezout"] = b;
            }
            wit.push_back(item);
        }
        return respond(req, inputs, {{"bound", rb.bound}, {"kernel_dim", rb.kernel_dim}, {"decided", rb.decided}},
                       {{"kernel_forms", wit}}, rb.decided ? kOk : kBoundExceeded, rb.decided ? "" : "uncertified");
    }
    if (cmd == "triangular") {
        const auto [X, P] = normal_form_inputs(spec, req, D, inputs);
        const TriangularReport tr = triangular_test(D, X, P, req.bound);
        json result;
        result["classification"] = tr.triangular ? "Triangular" : "NotTriangular";
        result["d"] = tr.sa.d;
        result["coordinates"] = coordinate_map(tr.sa.coords(), names);
        result["normal_P"] = tr.sa.P.str(kXYZ);
        result["gamma"] = tr.sa.gamma.str();
        result["x_strip"] = tr.sa.x_strip.str();
        result["e"] = tr.sb.e;
        result["i"] = tr.sb.i;
        if (tr.triangular) {
            result["deg_D(Y)"] = tr.deg_y;
            result["deg_D(Z)"] = tr.deg_z;
        }
        json wit{{"normalized_D", image_map(tr.sa.D, kXYZ)}, {"derivation_scale", tr.sa.derivation_scale.str()}};
        return respond(req, inputs, result, wit, kOk);
    }
    if (cmd == "ntr") {
        if (!req.p || !req.q) throw Error(ErrorKind::InvalidArgument, "ntr needs --p and --q");
        inputs["p"] = *req.p;
        inputs["q"] = *req.q;
        const auto [X, P] = normal_form_inputs(spec, req, D, inputs);
        const NtrReport nf = ntr_normal_form(D, X, P, *req.p, *req.q, req.bound);
        json cs = json::array();
        for (const auto& c : nf.c) cs.push_back(c.str());
        json result;
        result["p"] = nf.p;
        result["q"] = nf.q;
        result["swapped"] = nf.swapped;
        result["h"] = nf.h.str(kXYZ);
        result["c"] = cs;
        result["z_tilde"] = nf.z_tilde.str(kXYZ);
        result["normal_form"] = nf.expanded().str(kXYZ);
        result["coordinates"] = coordinate_map(
            [&] {
                std::vector<LinearForm> forms;
                for (const auto& row : nf.change.matrix()) {
                    Row r;
                    for (const auto& x : row) r.push_back(RingElem(x));
                    forms.push_back(LinearForm{r});
                }
                return forms;
            }(),
            names);
        result["gamma"] = nf.gamma.str();
        result["x_strip"] = nf.x_strip.str();
        result["x_adjust"] = nf.x_adjust.str();
        result["iterations"] = nf.iterations;
        const bool round = nf.reconstruct_input() == P;
        json wit{{"round_trip", round}, {"deg_D(Y)", nf.deg_y}, {"deg_D(Z)", nf.deg_z}};
        return respond(req, inputs, result, wit, round ? kOk : kCheckFailed);
    }
    if (cmd == "newton") {
        if (req.vars.size() != 2) throw Error(ErrorKind::InvalidArgument, "--vars needs two variables");
        const Poly f = expr_arg(0);
        const std::size_t i = var_index(spec, req.vars[0]), j = var_index(spec, req.vars[1]);
        inputs["vars"] = req.vars;
        const NewtonPolygon np = newton_polygon(f, i, j);
        const NpCheck chk = np_check(np);
        json verts = json::array();
        for (const auto& [a, b] : np.vertices) verts.push_back({a, b});
        json result{{"vertices", verts}, {"divides", chk.ok}};
        return respond(req, inputs, result, {{"m", chk.m}, {"n", chk.n}, {"degenerate", chk.degenerate}},
                       chk.ok ? kOk : kCheckFailed);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown command '" + cmd + "'");
}

} // namespace

void add_query_subcommands(CLI::App& app, Request& req) {
    auto sub = [&](const std::string& name, const std::string& help) {
        CLI::App* s = app.add_subcommand(name, help);
        s->callback([&req, name] { req.command = name; });
        s->add_option("--bound", req.bound, "iteration bound")->capture_default_str();
        return s;
    };
    sub("nilpotent", "certify local nilpotence of D");
    sub("degd", "deg_D of an expression")->add_option("expr", req.exprs)->required()->expected(1);
    sub("homogeneity", "degree of D under the session weights");
    sub("kernel", "is the expression in ker D")->add_option("expr", req.exprs)->required()->expected(1);
    sub("slice", "is the expression a local slice")->add_option("expr", req.exprs)->required()->expected(1);
    sub("jacobian", "the Jacobian derivation of two expressions")->add_option("exprs", req.exprs)->required()->expected(2);
    sub("filtration", "linear filtration by deg_D");
    sub("triple", "linear forms of strictly increasing deg_D");
    sub("rank", "upper bound on the rank");
    CLI::App* tri = sub("triangular", "classify D = Delta_(X, P)");
    tri->add_option("P", req.exprs, "P; recovered from D when omitted")->expected(0, 1);
    tri->add_option("--x", req.x, "kernel form X");
    CLI::App* ntr = sub("ntr", "normal form of a non-triangular D");
    ntr->add_option("P", req.exprs, "P; recovered from D when omitted")->expected(0, 1);
    ntr->add_option("--x", req.x, "kernel form X");
    ntr->add_option("--p", req.p)->required();
    ntr->add_option("--q", req.q)->required();
    CLI::App* np = sub("newton", "Newton polygon in two variables");
    np->add_option("expr", req.exprs)->required()->expected(1);
    np->add_option("--vars", req.vars)->required()->expected(2);
    CLI::App* vp = sub("verify-paper", "replay a built-in example");
    vp->add_option("--example", req.example)->required()->check(CLI::IsMember({"1", "2", "3", "tr", "ntr"}));
    vp->add_option("--d", req.d);
    vp->add_option("--p", req.p);
    vp->add_option("--q", req.q);
}

std::vector<std::string> split_words(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    bool have = false;
    char quote = 0;
    for (char c : text) {
        if (quote) {
            if (c == quote) quote = 0;
            else cur += c;
        } else if (c == '"' || c == '\'') {
            quote = c;
            have = true;
        } else if (c == ' ' || c == '\t') {
            if (have) out.push_back(cur);
            cur.clear();
            have = false;
        } else {
            cur += c;
            have = true;
        }
    }
    if (quote) throw Error(ErrorKind::SyntaxError, "unterminated quote");
    if (have) out.push_back(cur);
    return out;
}

namespace {

// In session files the expression runs up to the first option, so it needs
// no quoting there. jacobian separates its two expressions by a comma.
std::vector<std::string> query_words(const std::string& text) {
    static const std::vector<std::string> kOneExpr{"degd", "kernel", "slice", "newton", "triangular", "ntr", "jacobian"};
    const auto cmd_end = text.find_first_of(" \t");
    const std::string cmd = text.substr(0, cmd_end);
    if (cmd_end == std::string::npos || std::find(kOneExpr.begin(), kOneExpr.end(), cmd) == kOneExpr.end())
        return split_words(text);
    std::string rest = text.substr(cmd_end);
    std::string opts;
    static const std::regex opt(R"(\s--[A-Za-z])");
    std::smatch m;
    if (std::regex_search(rest, m, opt)) {
        opts = rest.substr(static_cast<std::size_t>(m.position(0)));
        rest = rest.substr(0, static_cast<std::size_t>(m.position(0)));
    }
    std::vector<std::string> out{cmd};
    auto add_expr = [&](std::string e) {
        e.erase(std::remove(e.begin(), e.end(), '"'), e.end());
        e.erase(std::remove(e.begin(), e.end(), '\''), e.end());
        if (e.find_first_not_of(" \t") != std::string::npos) out.push_back(e);
    };
    if (cmd == "jacobian" && rest.find(',') != std::string::npos) {
        add_expr(rest.substr(0, rest.find(',')));
        add_expr(rest.substr(rest.find(',') + 1));
    } else if (cmd == "jacobian") {
        for (auto& w : split_words(rest)) out.push_back(w);
    } else {
        add_expr(rest);
    }
    if (out.size() > 1 && out.back().find_first_not_of(" \t") != std::string::npos) {
        // Keep expressions starting with '-' away from the option parser.
        std::vector<std::string> exprs(out.begin() + 1, out.end());
        out.resize(1);
        for (auto& w : split_words(opts)) out.push_back(w);
        out.push_back("--");
        out.insert(out.end(), exprs.begin(), exprs.end());
        return out;
    }
    for (auto& w : split_words(opts)) out.push_back(w);
    return out;
}

} // namespace

Request parse_query(const std::string& text) {
    Request req;
    CLI::App app("session query");
    app.require_subcommand(1, 1);
    add_query_subcommands(app, req);
    auto args = query_words(text);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        throw Error(ErrorKind::SyntaxError, std::string(e.get_name()) + ": " + e.what());
    }
    return req;
}

Response run_command(const SessionSpec& spec, const Request& req) {
    try {
        if (req.command == "verify-paper") return run_verify(req);
        return run_session_command(spec, req);
    } catch (const std::exception& e) {
        return error_response(req.command, e);
    }
}

Response error_response(const std::string& command, const std::exception& e) {
    int code = kInputError;
    json err;
    if (const auto* le = dynamic_cast<const Error*>(&e)) {
        code = code_for(le->kind());
        err["kind"] = std::string(to_string(le->kind()));
    } else {
        err["kind"] = "InputError";
    }
    err["message"] = e.what();
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
        err["line"] = pe->line();
        err["column"] = pe->column();
        err["expected"] = pe->expected();
    }
    Response r;
    r.exit_code = code;
    r.json["command"] = command;
    r.json["inputs"] = json::object();
    r.json["result"] = nullptr;
    r.json["witnesses"] = json::object();
    r.json["error"] = err;
    r.json["status"] = status_name(code);
    r.json["version"] = kVersion;
    r.summary.push_back(command + ": " + e.what());
    return r;
}

} // namespace lnd::cli
