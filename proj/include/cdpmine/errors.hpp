#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdpmine {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dataset errors.
class EmptyDatabase : public Error {
public:
    EmptyDatabase() : Error("database contains no transactions") {}
};

class MalformedToken : public Error {
public:
    MalformedToken(std::size_t line, std::string token)
        : Error("line " + std::to_string(line) + ": malformed token '" + token + "'"), line_(line), token_(std::move(token)) {}
    std::size_t line() const { return line_; }
    const std::string& token() const { return token_; }

private:
    std::size_t line_;
    std::string token_;
};

class ItemOutOfRange : public Error {
public:
    ItemOutOfRange(std::size_t item, std::size_t n_items)
        : Error("item " + std::to_string(item) + " out of range [0, " + std::to_string(n_items) + ")") {}
};

// Model language errors.
struct SourcePos {
    std::size_t line = 1;
    std::size_t column = 1;
    friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

class SyntaxError : public Error {
public:
    SyntaxError(SourcePos pos, std::vector<std::string> expected, std::string found);
    SourcePos pos() const { return pos_; }
    const std::vector<std::string>& expected() const { return expected_; }
    const std::string& found() const { return found_; }

private:
    SourcePos pos_;
    std::vector<std::string> expected_;
    std::string found_;
};

class TypeError : public Error {
public:
    TypeError(SourcePos pos, const std::string& what)
        : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": type error: " + what), pos_(pos) {}
    SourcePos pos() const { return pos_; }

private:
    SourcePos pos_;
};

class MissingIncomparability : public Error {
public:
    MissingIncomparability() : Error("model has no incomparability_function; CDP+I cannot run") {}
};

class UnboundVariable : public Error {
public:
    explicit UnboundVariable(const std::string& name) : Error("unbound variable '" + name + "'") {}
};

class UnboundSolutionVariable : public Error {
public:
    explicit UnboundSolutionVariable(const std::string& name)
        : Error("solution does not bind fromSolution(" + name + ")") {}
};

class UniverseTooLarge : public Error {
public:
    UniverseTooLarge(std::size_t n_items, std::size_t limit)
        : Error("brute force needs n_items <= " + std::to_string(limit) + ", got " + std::to_string(n_items)) {}
};

}  // namespace cdpmine
