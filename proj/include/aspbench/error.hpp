//
// Copyright (c) 2026, the aspbench authors
//
// This file is part of aspbench.
//
// Permission is hereby granted, free of charge, to any person obtaining a copy
// of this software and associated documentation files (the "Software"), to
// deal in the Software without restriction, including without limitation the
// rights to use, copy, modify, merge, publish, distribute, sublicense, and/or
// sell copies of the Software, and to permit persons to whom the Software is
// furnished to do so, subject to the following conditions:
//
// The above copyright notice and this permission notice shall be included in
// all copies or substantial portions of the Software.
//
// THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
// IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
// FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
// AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
// LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING
// FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS
// IN THE SOFTWARE.
//

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aspbench {

/// Failure class of a harness error. The CLI maps each class to an exit code.
enum class ErrorClass {
    usage,    ///< bad arguments, unreadable input files
    dataset,  ///< bundle layout, manifests, suites, gold programs
    solver,   ///< solver missing or misbehaving
    endpoint, ///< LLM endpoint failures
    internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), class_(cls) {}
    [[nodiscard]] ErrorClass error_class() const noexcept { return class_; }

private:
    ErrorClass class_;
};

class LexError : public Error {
public:
    LexError(std::size_t line, std::size_t column, const std::string& msg)
        : Error(ErrorClass::dataset, std::to_string(line) + ":" + std::to_string(column) + ": " + msg)
        , line_(line)
        , column_(column) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

struct MappingCollision : Error {
    explicit MappingCollision(const std::string& msg) : Error(ErrorClass::dataset, msg) {}
};

struct InvalidIdentifier : Error {
    explicit InvalidIdentifier(const std::string& msg) : Error(ErrorClass::dataset, msg) {}
};

struct SolverUnavailable : Error {
    explicit SolverUnavailable(const std::string& msg) : Error(ErrorClass::solver, msg) {}
};

class SuiteSyntaxError : public Error {
public:
    SuiteSyntaxError(std::size_t line, const std::string& msg)
        : Error(ErrorClass::dataset, "line " + std::to_string(line) + ": " + msg), line_(line) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct UnknownAssertionKind : SuiteSyntaxError {
    UnknownAssertionKind(std::size_t line, const std::string& name)
        : SuiteSyntaxError(line, "unknown assertion kind '" + name + "'") {}
};

struct EmptyBase : Error {
    explicit EmptyBase(const std::string& msg) : Error(ErrorClass::internal, msg) {}
};

class ExhaustedMutationSpace : public Error {
public:
    ExhaustedMutationSpace(std::size_t requested, std::size_t possible)
        : Error(ErrorClass::dataset, "requested " + std::to_string(requested) + " mutants but only " +
                                         std::to_string(possible) + " distinct valid mutants exist")
        , possible_(possible) {}
    [[nodiscard]] std::size_t possible() const noexcept { return possible_; }

private:
    std::size_t possible_;
};

struct GoldFailsSuite : Error {
    explicit GoldFailsSuite(const std::string& msg) : Error(ErrorClass::dataset, msg) {}
};

struct HttpError : Error {
    explicit HttpError(const std::string& msg) : Error(ErrorClass::endpoint, msg) {}
};

struct EmptyResponse : Error {
    explicit EmptyResponse(const std::string& msg) : Error(ErrorClass::endpoint, msg) {}
};

struct MissingFile : Error {
    explicit MissingFile(const std::string& path) : Error(ErrorClass::dataset, "missing file: " + path) {}
};

struct ManifestMismatch : Error {
    explicit ManifestMismatch(const std::string& msg) : Error(ErrorClass::dataset, msg) {}
};

struct GoldSelfTestFailure : Error {
    explicit GoldSelfTestFailure(const std::string& msg) : Error(ErrorClass::dataset, msg) {}
};

struct DatasetRootMissing : Error {
    explicit DatasetRootMissing(const std::string& path)
        : Error(ErrorClass::dataset, "dataset root not found: " + path) {}
};

struct DegenerateVariance : Error {
    explicit DegenerateVariance(const std::string& msg) : Error(ErrorClass::usage, msg) {}
};

struct UnknownKind : Error {
    explicit UnknownKind(const std::string& kind) : Error(ErrorClass::usage, "unknown figure kind: " + kind) {}
};

} // namespace aspbench
