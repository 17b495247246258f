#pragma once

#include <stdexcept>
#include <string>

namespace reflinv {

/// Base class for every failure this library reports.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

class SingularMatrix : public Error {
public:
    explicit SingularMatrix(const std::string& what) : Error(what) {}
};

/// One of the coefficient combinations F-G, F+G is not invertible.
class SingularCoefficient : public Error {
public:
    explicit SingularCoefficient(const std::string& which) : Error("singular coefficient: " + which) {}
};

class SeriesDiverged : public Error {
public:
    explicit SeriesDiverged(const std::string& what) : Error(what) {}
};

class NonFiniteState : public Error {
public:
    explicit NonFiniteState(const std::string& what) : Error(what) {}
};

class NotInvertible : public Error {
public:
    explicit NotInvertible(const std::string& what) : Error(what) {}
};

class NotContractive : public Error {
public:
    explicit NotContractive(const std::string& what) : Error(what) {}
};

class UnsupportedIndex : public Error {
public:
    explicit UnsupportedIndex(const std::string& what) : Error(what) {}
};

class Unsupported : public Error {
public:
    explicit Unsupported(const std::string& what) : Error(what) {}
};

/// Thrown when a computation is requested outside its well-conditioned range.
class ConditioningWarning : public Error {
public:
    explicit ConditioningWarning(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

} // namespace reflinv
