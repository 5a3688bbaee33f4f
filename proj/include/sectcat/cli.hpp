#pragma once

#include "sectcat/free_cdga.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sectcat {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, std::string token, const std::string& message);
    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& token() const { return token_; }

private:
    int line_;
    int column_;
    std::string token_;
};

/// Reads the model language:
///
///   algebra NAME {
///     field Q
///     truncate INT
///     space-dim INT
///     simply-connected true|false
///     generator NAME degree INT
///     d NAME = poly
///     alias NAME = poly
///   }
///
/// poly := ['-'] term (('+'|'-') term)* | '0', term := [INT['/'INT] '*'] NAME ('*' NAME)*.
/// '#' starts a comment.
Presentation parse_model(const std::string& text);

/// Inverse of parse_model.
std::string print_model(const Presentation& p);

struct GoldenModel {
    std::string name;
    std::string summary;
    std::string text;
};

const std::vector<GoldenModel>& golden_models();
std::optional<Presentation> golden_model(const std::string& name);

enum ExitCode { kExitOk = 0, kExitAssertion = 1, kExitInput = 2 };

struct RunOptions {
    std::string command;  // validate | cohomology | massey | zcl | bounds
    std::string model;    // file path or golden model name
    std::vector<std::string> classes;
    bool json = false;
    bool quiet = false;
    std::optional<int> max_massey_degree;
    unsigned threads = 1;
};

struct RunResult {
    int exit_code = kExitOk;
    std::string out;
    std::string err;
};

RunResult run(const RunOptions& options);

/// Runs on an already loaded presentation (the model argument is ignored).
RunResult run(const RunOptions& options, const Presentation& model);

}  // namespace sectcat
