// lnd: command-line front end for the derivation library.

#include "lnd/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace lnd;
using namespace lnd::cli;

namespace {

std::string read_source(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
    ss << in.rdbuf();
    return ss.str();
}

// what() without the leading kind tag.
std::string detail(const std::exception& e) {
    const std::string w = e.what();
    const auto colon = w.find(": ");
    return dynamic_cast<const Error*>(&e) && colon != std::string::npos ? w.substr(colon + 2) : w;
}

void emit_summary(const Response& r, bool json_only) {
    if (json_only) return;
    if (r.summary.empty())
        std::cerr << r.json["command"].get<std::string>() << ": " << r.json["status"].get<std::string>() << " "
                  << r.json["result"].dump() << "\n";
    for (const auto& line : r.summary) std::cerr << line << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Locally nilpotent derivations over Q, Q[t] and the circle ring"};
    std::string session_path;
    std::optional<long> d;
    bool json_only = false;
    app.add_option("-s,--session", session_path, "session file, - for stdin");
    app.add_option("--d", d, "value substituted for the word d in the session");
    app.add_flag("--json-only", json_only, "no summary on stderr");
    app.set_version_flag("--version", kVersion);

    app.fallthrough();
    Request req;
    add_query_subcommands(app, req);
    std::string run_path;
    CLI::App* run = app.add_subcommand("run", "run the queries listed in a session file");
    run->add_option("file", run_path, "session file, - for stdin")->required();
    app.require_subcommand(1, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    if (run->parsed()) {
        SessionSpec spec;
        try {
            spec = parse_session(read_source(run_path), d);
        } catch (const std::exception& e) {
            const Response r = error_response("run", e);
            std::cout << r.json.dump(2) << "\n";
            emit_summary(r, json_only);
            return r.exit_code;
        }
        nlohmann::ordered_json all = nlohmann::ordered_json::array();
        int code = kOk;
        for (const auto& q : spec.queries) {
            Response r;
            try {
                Request qr = parse_query(q.text);
                if (!qr.d && qr.command == "verify-paper") qr.d = d;
                r = run_command(spec, qr);
            } catch (const std::exception& e) {
                r = error_response(q.text, ParseError(ErrorKind::SyntaxError, detail(e), q.line, 1));
            }
            r.json["line"] = q.line;
            emit_summary(r, json_only);
            code = std::max(code, r.exit_code);
            all.push_back(r.json);
        }
        std::cout << all.dump(2) << "\n";
        return code;
    }

    if (!req.d && req.command == "verify-paper") req.d = d;
    SessionSpec spec;
    try {
        if (!session_path.empty()) spec = parse_session(read_source(session_path), d);
    } catch (const std::exception& e) {
        const Response r = error_response(req.command, e);
        std::cout << r.json.dump(2) << "\n";
        emit_summary(r, json_only);
        return r.exit_code;
    }
    const Response r = run_command(spec, req);
    std::cout << r.json.dump(2) << "\n";
    emit_summary(r, json_only);
    return r.exit_code;
}
