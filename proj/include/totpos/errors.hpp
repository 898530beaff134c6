#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace totpos {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotPositiveDefinite : public Error {
public:
    explicit NotPositiveDefinite(std::ptrdiff_t pivot)
        : Error("matrix is not positive definite (pivot " + std::to_string(pivot) + ")"),
          pivot_(pivot) {}
    std::ptrdiff_t pivot() const noexcept { return pivot_; }

private:
    std::ptrdiff_t pivot_;
};

class NonPositiveDiagonal : public Error {
public:
    explicit NonPositiveDiagonal(std::ptrdiff_t index)
        : Error("diagonal entry " + std::to_string(index) + " is not positive"), index_(index) {}
    std::ptrdiff_t index() const noexcept { return index_; }

private:
    std::ptrdiff_t index_;
};

class NegativeEntry : public Error {
public:
    NegativeEntry(std::ptrdiff_t i, std::ptrdiff_t j)
        : Error("negative entry at (" + std::to_string(i) + ", " + std::to_string(j) + ")"),
          i_(i), j_(j) {}
    std::ptrdiff_t row() const noexcept { return i_; }
    std::ptrdiff_t col() const noexcept { return j_; }

private:
    std::ptrdiff_t i_;
    std::ptrdiff_t j_;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class InvalidCorrelation : public Error {
public:
    using Error::Error;
};

class MleDoesNotExist : public Error {
public:
    MleDoesNotExist()
        : Error("MLE does not exist: some off-diagonal correlation is not below 1") {}
};

class InputNotMMatrix : public Error {
public:
    InputNotMMatrix() : Error("input is not an M-matrix") {}
};

class ZeroWeightTreeEdge : public Error {
public:
    using Error::Error;
};

class NoKktPoint : public Error {
public:
    NoKktPoint() : Error("no candidate active set satisfies the KKT system") {}
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                what),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace totpos
