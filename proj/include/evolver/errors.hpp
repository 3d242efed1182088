#pragma once

#include <stdexcept>
#include <string>

namespace evolver {

// Error taxonomy, one class per CLI exit category:
//   2 format, 3 policy, 4 quota, 5 tamper/lineage. Everything else exits 1.
class Error : public std::runtime_error {
public:
    explicit Error(std::string msg, int exit_code = 1)
        : std::runtime_error(std::move(msg)), exit_code_(exit_code) {}

    int exit_code() const { return exit_code_; }

private:
    int exit_code_;
};

class FormatError : public Error {
public:
    explicit FormatError(std::string msg) : Error(std::move(msg), 2) {}
};

// Traversal segments or absolute paths in a meta-action; distinct from a
// policy violation, which is reported as data by validate_meta_action.
class MalformedActionError : public FormatError {
public:
    explicit MalformedActionError(std::string msg) : FormatError(std::move(msg)) {}
};

class PolicyError : public Error {
public:
    explicit PolicyError(std::string msg) : Error(std::move(msg), 3) {}
};

class AuthorizationError : public PolicyError {
public:
    explicit AuthorizationError(std::string msg) : PolicyError(std::move(msg)) {}
};

class ReplayRefusedError : public PolicyError {
public:
    explicit ReplayRefusedError(std::string msg) : PolicyError(std::move(msg)) {}
};

class StoreLockedError : public PolicyError {
public:
    explicit StoreLockedError(std::string msg) : PolicyError(std::move(msg)) {}
};

class QuotaError : public Error {
public:
    explicit QuotaError(std::string msg) : Error(std::move(msg), 4) {}
};

class TamperError : public Error {
public:
    explicit TamperError(std::string msg) : Error(std::move(msg), 5) {}
};

class LineageError : public Error {
public:
    explicit LineageError(std::string msg) : Error(std::move(msg), 5) {}
};

class EditFailedError : public Error {
public:
    explicit EditFailedError(std::string msg) : Error(std::move(msg), 1) {}
};

} // namespace evolver
