#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace keller {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ContextMismatch : public Error {
  public:
    ContextMismatch() : Error("polynomials live in different variable contexts") {}
    explicit ContextMismatch(const std::string& what) : Error(what) {}
};

class UnknownVariable : public Error {
  public:
    explicit UnknownVariable(const std::string& name) : Error("unknown variable '" + name + "'"), name_(name) {}
    const std::string& name() const { return name_; }

  private:
    std::string name_;
};

class MissingAssignment : public Error {
  public:
    explicit MissingAssignment(const std::string& name)
        : Error("substitution has no image for variable '" + name + "'") {}
};

class DivisionByZero : public Error {
  public:
    DivisionByZero() : Error("division by zero polynomial") {}
};

// Gröbner step or degree limit hit; never a wrong answer.
class ResourceCapExceeded : public Error {
  public:
    using Error::Error;
};

class AlgebraicallyDependent : public Error {
  public:
    using Error::Error;
};

class ZeroKernel : public Error {
  public:
    using Error::Error;
};

class NotShapePosition : public Error {
  public:
    using Error::Error;
};

class DegreeCapExceeded : public Error {
  public:
    using Error::Error;
};

class MembershipFailed : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    enum class Kind { Syntax, UnknownVariable, NegativeExponent, FractionalExponent };

    ParseError(Kind kind, std::size_t position, const std::string& message)
        : Error(message + " at position " + std::to_string(position)), kind_(kind), position_(position) {}

    Kind kind() const { return kind_; }
    std::size_t position() const { return position_; }

  private:
    Kind kind_;
    std::size_t position_;
};

}  // namespace keller
