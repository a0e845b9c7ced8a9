#pragma once

#include "lnd/expr.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace CLI {
class App;
}

namespace lnd::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInputError = 2, kBoundExceeded = 3 };

struct Request {
    std::string command;
    std::vector<std::string> exprs;
    unsigned bound = kDefaultBound;
    std::optional<long> d;
    std::optional<long> p;
    std::optional<long> q;
    std::vector<std::string> vars; ///< newton
    std::string example;           ///< verify-paper
    std::optional<std::string> x;  ///< kernel form for triangular and ntr
};

struct Response {
    nlohmann::ordered_json json;
    int exit_code = kOk;
    std::vector<std::string> summary; ///< human-readable lines for stderr
};

/// Registers the query subcommands on `app`; parsing fills `req`.
void add_query_subcommands(CLI::App& app, Request& req);

/// Parses a command line written inside a session file.
Request parse_query(const std::string& text);

/// Shell-like split with single and double quotes.
std::vector<std::string> split_words(const std::string& text);

Response run_command(const SessionSpec& spec, const Request& req);

/// Report for an error raised before a command could run.
Response error_response(const std::string& command, const std::exception& e);

} // namespace lnd::cli
