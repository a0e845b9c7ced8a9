#include "lnd/expr.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <regex>
#include <set>
#include <sstream>

namespace lnd {

ParseError::ParseError(ErrorKind kind, const std::string& detail, std::size_t line, std::size_t column,
                       std::vector<std::string> expected)
    : Error(kind, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + detail),
      line_(line), column_(column), expected_(std::move(expected)) {}

std::vector<std::string> ring_symbols(RingId ring) {
    switch (ring) {
    case RingId::Q: return {};
    case RingId::PolyT: return {"t"};
    case RingId::Circle: return {"w1", "w2"};
    }
    return {};
}

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t col; // 0-based offset in the parsed text
};

std::string describe(const Token& t) { return t.kind == Tok::End ? "end of input" : "'" + t.text + "'"; }

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

class Parser {
public:
    Parser(std::string_view text, const ParseContext& ctx, std::size_t line, std::size_t column)
        : ctx_(ctx), line_(line), column_(column) {
        tokenize(text);
        for (const auto& s : ring_symbols(ctx.ring)) names_.emplace(s, Name::Symbol);
        for (const auto& v : ctx.vars) names_.emplace(v, Name::Var);
        for (const auto& [m, e] : ctx.macros) names_.emplace(m, Name::Macro);
    }

    Expr parse() {
        Expr e = expr();
        if (peek().kind != Tok::End) fail(peek(), "unexpected " + describe(peek()), {"+", "-", "*", "^", "end of input"});
        return e;
    }

private:
    enum class Name { Symbol, Var, Macro };

    [[noreturn]] void fail(const Token& at, const std::string& msg, std::vector<std::string> expected = {},
                           ErrorKind kind = ErrorKind::SyntaxError) const {
        throw ParseError(kind, msg, line_, column_ + at.col, std::move(expected));
    }

    void tokenize(std::string_view s) {
        std::size_t i = 0;
        while (i < s.size()) {
            const char c = s[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            const std::size_t start = i;
            if (digit(c)) {
                while (i < s.size() && digit(s[i])) ++i;
                if (i + 1 < s.size() && s[i] == '/' && digit(s[i + 1])) {
                    ++i;
                    while (i < s.size() && digit(s[i])) ++i;
                }
                toks_.push_back({Tok::Number, std::string(s.substr(start, i - start)), start});
                continue;
            }
            if (ident_start(c)) {
                while (i < s.size() && ident_char(s[i])) ++i;
                toks_.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
                continue;
            }
            Tok k;
            switch (c) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '^': k = Tok::Caret; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            default:
                fail(Token{Tok::End, "", start}, std::string("unexpected character '") + c + "'",
                     {"number", "identifier", "(", "+", "-", "*", "^", ")"});
            }
            toks_.push_back({k, std::string(1, c), start});
            ++i;
        }
        toks_.push_back({Tok::End, "", s.size()});
    }

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }

    static Expr node(Expr::Kind k, std::vector<Expr> args) {
        Expr e;
        e.kind = k;
        e.args = std::move(args);
        return e;
    }

    Expr expr() {
        Expr lhs = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const auto k = next().kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
            lhs = node(k, {std::move(lhs), term()});
        }
        return lhs;
    }

    static bool starts_factor(Tok k) { return k == Tok::Number || k == Tok::Ident || k == Tok::LParen; }

    Expr term() {
        if (peek().kind == Tok::Minus) {
            next();
            return node(Expr::Kind::Neg, {term()});
        }
        Expr lhs = factor();
        while (true) {
            if (peek().kind == Tok::Star) {
                next();
                lhs = node(Expr::Kind::Mul, {std::move(lhs), factor()});
            } else if (starts_factor(peek().kind)) {
                lhs = node(Expr::Kind::Mul, {std::move(lhs), factor()});
            } else {
                return lhs;
            }
        }
    }

    unsigned exponent() {
        bool paren = false;
        if (peek().kind == Tok::LParen) {
            next();
            paren = true;
        }
        const Token& t = next();
        if (t.kind != Tok::Number || t.text.find('/') != std::string::npos)
            fail(t, "expected a nonnegative integer exponent, got " + describe(t), {"nonnegative integer"});
        if (t.text.size() > 6) fail(t, "exponent too large");
        const auto n = static_cast<unsigned>(std::stoul(t.text));
        if (paren && next().kind != Tok::RParen) fail(toks_[pos_ - 1], "expected ')'", {")"});
        return n;
    }

    // In "tF^2" the exponent binds to F only.
    Expr factor() {
        std::vector<Expr> parts;
        if (peek().kind == Tok::Ident) parts = identifier(next());
        else parts.push_back(base());
        if (peek().kind == Tok::Caret) {
            next();
            Expr p = node(Expr::Kind::Pow, {std::move(parts.back())});
            p.exponent = exponent();
            parts.back() = std::move(p);
        }
        Expr e = std::move(parts.front());
        for (std::size_t k = 1; k < parts.size(); ++k) e = node(Expr::Kind::Mul, {std::move(e), std::move(parts[k])});
        return e;
    }

    Expr base() {
        const Token& t = next();
        switch (t.kind) {
        case Tok::Number: {
            Expr e;
            e.value = Rational::parse(t.text);
            return e;
        }
        case Tok::LParen: {
            Expr e = expr();
            if (next().kind != Tok::RParen) fail(toks_[pos_ - 1], "expected ')', got " + describe(toks_[pos_ - 1]), {")", "+", "-", "*"});
            return e;
        }
        default: fail(t, "expected a number, identifier or '(', got " + describe(t), {"number", "identifier", "("});
        }
    }

    Expr name_expr(const std::string& n, Name kind) const {
        Expr e;
        switch (kind) {
        case Name::Symbol: e.kind = Expr::Kind::Symbol; e.name = n; return e;
        case Name::Var: e.kind = Expr::Kind::Var; e.name = n; return e;
        case Name::Macro: return ctx_.macros.at(n);
        }
        return e;
    }

    // Splits juxtaposed names like "tyF" greedily, longest known name first.
    std::vector<Expr> identifier(const Token& t) {
        std::vector<Expr> parts;
        std::size_t i = 0;
        while (i < t.text.size()) {
            std::size_t best = 0;
            const std::pair<const std::string, Name>* hit = nullptr;
            for (const auto& entry : names_) {
                const auto& n = entry.first;
                if (n.size() > best && t.text.compare(i, n.size(), n) == 0) {
                    best = n.size();
                    hit = &entry;
                }
            }
            if (!hit) {
                Token at = t;
                at.col += i;
                fail(at, "undeclared identifier '" + t.text.substr(i) + "'", {}, ErrorKind::UndeclaredIdentifier);
            }
            parts.push_back(name_expr(hit->first, hit->second));
            i += best;
        }
        return parts;
    }

    const ParseContext& ctx_;
    std::size_t line_;
    std::size_t column_;
    std::map<std::string, Name> names_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Neg: return 2;
    case Expr::Kind::Mul: return 3;
    case Expr::Kind::Pow: return 4;
    case Expr::Kind::Number: return e.value.den() == 1 ? 5 : 4;
    default: return 5;
    }
}

std::string wrap(const Expr& e, bool paren) { return paren ? "(" + print_expr(e) + ")" : print_expr(e); }

} // namespace

Expr parse_expr(std::string_view text, const ParseContext& ctx, std::size_t line, std::size_t column) {
    return Parser(text, ctx, line, column).parse();
}

std::string print_expr(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Number: return e.value.str();
    case Expr::Kind::Symbol:
    case Expr::Kind::Var: return e.name;
    case Expr::Kind::Neg: return "-" + wrap(e.args[0], precedence(e.args[0]) <= 2);
    case Expr::Kind::Add: return print_expr(e.args[0]) + " + " + wrap(e.args[1], precedence(e.args[1]) <= 1);
    case Expr::Kind::Sub: return print_expr(e.args[0]) + " - " + wrap(e.args[1], precedence(e.args[1]) <= 1);
    case Expr::Kind::Mul:
        return wrap(e.args[0], precedence(e.args[0]) < 3) + "*" + wrap(e.args[1], precedence(e.args[1]) <= 3);
    case Expr::Kind::Pow: return wrap(e.args[0], precedence(e.args[0]) <= 4) + "^" + std::to_string(e.exponent);
    }
    return {};
}

Poly lower(const Expr& e, const ParseContext& ctx) {
    const std::size_t n = ctx.vars.size();
    switch (e.kind) {
    case Expr::Kind::Number: return Poly::constant(ctx.ring, n, RingElem::constant(ctx.ring, e.value));
    case Expr::Kind::Symbol:
        if (ctx.ring == RingId::PolyT && e.name == "t") return Poly::constant(ctx.ring, n, RingElem::t());
        if (ctx.ring == RingId::Circle && e.name == "w1") return Poly::constant(ctx.ring, n, RingElem::w1());
        if (ctx.ring == RingId::Circle && e.name == "w2") return Poly::constant(ctx.ring, n, RingElem::w2());
        throw Error(ErrorKind::UndeclaredIdentifier, "symbol " + e.name + " is not a coefficient of " + std::string(to_string(ctx.ring)));
    case Expr::Kind::Var: {
        const auto it = std::find(ctx.vars.begin(), ctx.vars.end(), e.name);
        if (it == ctx.vars.end()) throw Error(ErrorKind::UndeclaredIdentifier, "variable " + e.name);
        return Poly::variable(ctx.ring, n, static_cast<std::size_t>(it - ctx.vars.begin()));
    }
    case Expr::Kind::Neg: return -lower(e.args[0], ctx);
    case Expr::Kind::Add: return lower(e.args[0], ctx) + lower(e.args[1], ctx);
    case Expr::Kind::Sub: return lower(e.args[0], ctx) - lower(e.args[1], ctx);
    case Expr::Kind::Mul: return lower(e.args[0], ctx) * lower(e.args[1], ctx);
    case Expr::Kind::Pow: return lower(e.args[0], ctx).pow(e.exponent);
    }
    return Poly(ctx.ring, n);
}

ParseContext SessionSpec::context() const { return {ring, vars, macros}; }

Derivation SessionSpec::derivation() const {
    const ParseContext ctx = context();
    std::vector<Poly> imgs;
    for (const auto& v : vars) {
        const auto it = images.find(v);
        imgs.push_back(it == images.end() ? Poly(ring, vars.size()) : lower(it->second, ctx));
    }
    return Derivation(std::move(imgs));
}

Poly SessionSpec::poly(std::string_view text) const {
    const ParseContext ctx = context();
    return lower(parse_expr(text, ctx), ctx);
}

namespace {

// Integer value of a text made of digits, + - * and parentheses.
std::optional<long> eval_int(std::string_view s) {
    std::size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && s[i] == ' ') ++i;
    };
    std::function<std::optional<long>()> sum;
    std::function<std::optional<long>()> atom = [&]() -> std::optional<long> {
        skip();
        if (i < s.size() && s[i] == '(') {
            ++i;
            auto v = sum();
            skip();
            if (!v || i >= s.size() || s[i] != ')') return std::nullopt;
            ++i;
            return v;
        }
        if (i < s.size() && s[i] == '-') {
            ++i;
            auto v = atom();
            return v ? std::optional<long>(-*v) : std::nullopt;
        }
        const std::size_t start = i;
        while (i < s.size() && digit(s[i])) ++i;
        if (start == i) return std::nullopt;
        return std::stol(std::string(s.substr(start, i - start)));
    };
    auto product = [&]() -> std::optional<long> {
        auto v = atom();
        while (v) {
            skip();
            if (i >= s.size() || s[i] != '*') break;
            ++i;
            auto r = atom();
            if (!r) return std::nullopt;
            *v *= *r;
        }
        return v;
    };
    sum = [&]() -> std::optional<long> {
        auto v = product();
        while (v) {
            skip();
            if (i >= s.size() || (s[i] != '+' && s[i] != '-')) break;
            const char op = s[i++];
            auto r = product();
            if (!r) return std::nullopt;
            *v = op == '+' ? *v + *r : *v - *r;
        }
        return v;
    };
    auto v = sum();
    skip();
    if (i != s.size()) return std::nullopt;
    return v;
}

} // namespace

std::string substitute_d(std::string_view text, long d) {
    static const std::regex word(R"(\bd\b)");
    std::string s = std::regex_replace(std::string(text), word, std::to_string(d));
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '^' && i + 1 < s.size() && s[i + 1] == '(') {
            int depth = 0;
            std::size_t j = i + 1;
            for (; j < s.size(); ++j) {
                if (s[j] == '(') ++depth;
                if (s[j] == ')' && --depth == 0) break;
            }
            if (j < s.size()) {
                const auto v = eval_int(std::string_view(s).substr(i + 2, j - i - 2));
                if (v && *v >= 0) {
                    out += "^" + std::to_string(*v);
                    i = j + 1;
                    continue;
                }
            }
        }
        out += s[i++];
    }
    return out;
}

namespace {

struct Line {
    std::string text;
    std::size_t number;
};

std::vector<std::string> words(std::string_view s) {
    std::istringstream in{std::string(s)};
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

bool valid_ident(const std::string& s) {
    return !s.empty() && ident_start(s[0]) && std::all_of(s.begin(), s.end(), ident_char);
}

} // namespace

SessionSpec parse_session(std::string_view input, std::optional<long> d) {
    const std::string text = d ? substitute_d(input, *d) : std::string(input);
    SessionSpec spec;
    bool weights_given = false;
    bool frozen = false; // set by the first D or let line
    std::size_t weights_line = 0;

    std::istringstream in(text);
    std::string raw;
    for (std::size_t lineno = 1; std::getline(in, raw); ++lineno) {
        std::string line = raw.substr(0, raw.find('#'));
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(0, last + 1);
        const std::size_t col0 = first + 1;
        const auto ws = words(line);
        const std::string& head = ws[0];
        auto err = [&](ErrorKind k, const std::string& msg, std::size_t col, std::vector<std::string> exp = {}) {
            throw ParseError(k, msg, lineno, col, std::move(exp));
        };
        auto word_col = [&](std::size_t k) {
            std::size_t pos = first;
            for (std::size_t w = 0; w <= k; ++w) {
                pos = line.find_first_not_of(" \t", pos);
                if (w < k) pos = line.find_first_of(" \t", pos);
            }
            return pos + 1;
        };

        if (head == "ring") {
            if (frozen) err(ErrorKind::SyntaxError, "ring must be declared before D and let lines", col0);
            if (ws.size() != 2) err(ErrorKind::SyntaxError, "ring takes one argument", col0, {"Q", "Q[t]", "circle"});
            if (ws[1] == "Q") spec.ring = RingId::Q;
            else if (ws[1] == "Q[t]") spec.ring = RingId::PolyT;
            else if (ws[1] == "circle") spec.ring = RingId::Circle;
            else err(ErrorKind::SyntaxError, "unknown ring '" + ws[1] + "'", word_col(1), {"Q", "Q[t]", "circle"});
        } else if (head == "vars") {
            if (frozen) err(ErrorKind::SyntaxError, "vars must be declared before D and let lines", col0);
            if (ws.size() < 2 || ws.size() > 4) err(ErrorKind::ArityMismatch, "vars takes one to three names", col0);
            spec.vars.assign(ws.begin() + 1, ws.end());
            for (std::size_t k = 0; k < spec.vars.size(); ++k) {
                const auto& v = spec.vars[k];
                if (!valid_ident(v)) err(ErrorKind::SyntaxError, "bad variable name '" + v + "'", word_col(k + 1), {"identifier"});
                if (std::count(spec.vars.begin(), spec.vars.end(), v) > 1)
                    err(ErrorKind::SyntaxError, "variable '" + v + "' declared twice", word_col(k + 1));
            }
            if (!weights_given) spec.weights.assign(spec.vars.size(), 1);
        } else if (head == "weights") {
            spec.weights.clear();
            for (std::size_t k = 1; k < ws.size(); ++k) {
                try {
                    std::size_t used = 0;
                    spec.weights.push_back(std::stol(ws[k], &used));
                    if (used != ws[k].size()) throw std::invalid_argument("trailing");
                } catch (const std::logic_error&) {
                    err(ErrorKind::SyntaxError, "weight '" + ws[k] + "' is not an integer", word_col(k), {"integer"});
                }
            }
            weights_given = true;
            weights_line = lineno;
        } else if (head == "D" || head == "let") {
            frozen = true;
            for (const auto& v : spec.vars)
                for (const auto& s : ring_symbols(spec.ring))
                    if (v == s) err(ErrorKind::SyntaxError, "variable '" + v + "' clashes with a ring symbol", col0);
            const auto eq = line.find('=');
            if (eq == std::string::npos) err(ErrorKind::SyntaxError, "expected '='", line.size() + 1, {"="});
            const auto target = words(line.substr(first + head.size(), eq - first - head.size()));
            if (target.size() != 1 || !valid_ident(target[0]))
                err(ErrorKind::SyntaxError, "expected one name before '='", word_col(1), {"identifier"});
            const std::string& name = target[0];
            const Expr e = parse_expr(std::string_view(line).substr(eq + 1), spec.context(), lineno, eq + 2);
            if (head == "D") {
                if (std::find(spec.vars.begin(), spec.vars.end(), name) == spec.vars.end())
                    err(ErrorKind::UndeclaredIdentifier, "undeclared identifier '" + name + "'", word_col(1));
                if (!spec.images.emplace(name, e).second) err(ErrorKind::SyntaxError, "D " + name + " given twice", col0);
            } else {
                const auto syms = ring_symbols(spec.ring);
                if (std::find(spec.vars.begin(), spec.vars.end(), name) != spec.vars.end() ||
                    std::find(syms.begin(), syms.end(), name) != syms.end())
                    err(ErrorKind::SyntaxError, "let name '" + name + "' shadows a variable or ring symbol", word_col(1));
                spec.macros[name] = e;
            }
        } else if (std::find(kCommandNames.begin(), kCommandNames.end(), head) != kCommandNames.end()) {
            spec.queries.push_back({line.substr(first), lineno});
        } else {
            std::vector<std::string> exp{"ring", "vars", "weights", "D", "let"};
            exp.insert(exp.end(), kCommandNames.begin(), kCommandNames.end());
            err(ErrorKind::SyntaxError, "unknown statement '" + head + "'", col0, exp);
        }
    }
    if (spec.weights.size() != spec.vars.size())
        throw ParseError(ErrorKind::ArityMismatch,
                         std::to_string(spec.weights.size()) + " weights for " + std::to_string(spec.vars.size()) + " variables",
                         weights_line ? weights_line : 1, 1);
    return spec;
}

} // namespace lnd
