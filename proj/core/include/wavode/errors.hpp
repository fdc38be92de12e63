#pragma once

#include <stdexcept>
#include <string>

namespace wavode {

// Every error carries a short stable name used for CLI diagnostics and
// exit-code mapping; the what() string adds context.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& msg)
        : std::runtime_error(name + ": " + msg), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// Problem-file / configuration rejection (CLI exit 2).
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& msg) : Error("SchemaError", msg) {}
};

// Operator validation failures (CLI exit 3).
class ValidationError : public Error {
public:
    using Error::Error;
};

class SingularAtI : public ValidationError {
public:
    explicit SingularAtI(const std::string& msg) : ValidationError("SingularAtI", msg) {}
};

class SpaceMismatch : public ValidationError {
public:
    explicit SpaceMismatch(const std::string& msg) : ValidationError("SpaceMismatch", msg) {}
};

class NegativeIterationCount : public ValidationError {
public:
    explicit NegativeIterationCount(const std::string& msg)
        : ValidationError("NegativeIterationCount", msg) {}
};

// Solver-stage failures (CLI exit 4).
class SolverError : public Error {
public:
    using Error::Error;
};

class PivotZero : public SolverError {
public:
    explicit PivotZero(long n)
        : SolverError("PivotZero", "vanishing recursion pivot at index " + std::to_string(n)),
          index_(n) {}
    long index() const noexcept { return index_; }

private:
    long index_;
};

class IterationCapExceeded : public SolverError {
public:
    explicit IterationCapExceeded(const std::string& msg)
        : SolverError("IterationCapExceeded", msg) {}
};

class AllDegenerate : public SolverError {
public:
    explicit AllDegenerate(const std::string& msg) : SolverError("AllDegenerate", msg) {}
};

class DependentReplenish : public SolverError {
public:
    explicit DependentReplenish(const std::string& msg)
        : SolverError("DependentReplenish", msg) {}
};

class DivisionByZeroValue : public SolverError {
public:
    explicit DivisionByZeroValue(const std::string& msg)
        : SolverError("DivisionByZeroValue", msg) {}
};

class DivisionByZeroCoeff : public SolverError {
public:
    explicit DivisionByZeroCoeff(const std::string& msg)
        : SolverError("DivisionByZeroCoeff", msg) {}
};

class DegenerateNormalization : public SolverError {
public:
    explicit DegenerateNormalization(const std::string& msg)
        : SolverError("DegenerateNormalization", msg) {}
};

// Bound-report parameter problems.
class InfeasibleParams : public Error {
public:
    explicit InfeasibleParams(const std::string& msg) : Error("InfeasibleParams", msg) {}
};

}  // namespace wavode
