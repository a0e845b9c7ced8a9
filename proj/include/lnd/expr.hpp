#pragma once

#include "lnd/derivation.hpp"
#include "lnd/error.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lnd {

struct Expr {
    enum class Kind { Number, Symbol, Var, Neg, Add, Sub, Mul, Pow };
    Kind kind = Kind::Number;
    Rational value;        ///< Number, never negative
    std::string name;      ///< Symbol, Var
    unsigned exponent = 0; ///< Pow
    std::vector<Expr> args;

    friend bool operator==(const Expr&, const Expr&) = default;
};

/// A positioned input error. Lines and columns are 1-based.
class ParseError : public Error {
public:
    ParseError(ErrorKind kind, const std::string& detail, std::size_t line, std::size_t column,
               std::vector<std::string> expected = {});

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::vector<std::string> expected_;
};

struct ParseContext {
    RingId ring = RingId::Q;
    std::vector<std::string> vars;
    std::map<std::string, Expr> macros; ///< expanded in place while parsing
};

/// Coefficient symbols of the ring: t, or w1 and w2.
std::vector<std::string> ring_symbols(RingId ring);

/// Parses one expression. `line` and `column` locate text[0] for error messages.
Expr parse_expr(std::string_view text, const ParseContext& ctx, std::size_t line = 1, std::size_t column = 1);
/// Fully parenthesized where needed, with explicit '*'.
std::string print_expr(const Expr& e);
Poly lower(const Expr& e, const ParseContext& ctx);

struct SessionCommand {
    std::string text;
    std::size_t line = 0;
};

struct SessionSpec {
    RingId ring = RingId::Q;
    std::vector<std::string> vars{"x", "y", "z"};
    WeightVec weights{1, 1, 1};
    std::map<std::string, Expr> images; ///< by variable name; missing ones are 0
    std::map<std::string, Expr> macros;
    std::vector<SessionCommand> queries;

    ParseContext context() const;
    Derivation derivation() const;
    /// Parses and lowers an expression given outside the session text.
    Poly poly(std::string_view text) const;
};

/// Replaces the word d by its value and folds ^(integer expression).
std::string substitute_d(std::string_view text, long d);

SessionSpec parse_session(std::string_view text, std::optional<long> d = std::nullopt);

inline const std::vector<std::string> kCommandNames{"nilpotent", "degd",       "homogeneity", "kernel",
                                                    "slice",     "jacobian",   "filtration",  "triple",
                                                    "rank",      "triangular", "ntr",         "newton",
                                                    "verify-paper"};

} // namespace lnd
