#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace ticktrack {

//! Bad input to a pure operation (non-finite values, size mismatches, ...).
class InvalidArgument : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

//! The current pointer state lies outside the display.
class InfeasibleState : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

//! A value violates a type invariant. `invariant()` names the failed rule.
class ValidationError : public std::runtime_error
{
public:
  ValidationError(std::string invariant, const std::string& detail)
    : std::runtime_error(invariant + ": " + detail)
    , invariant_(std::move(invariant))
  {
  }

  const std::string& invariant() const noexcept { return invariant_; }

private:
  std::string invariant_;
};

//! Malformed text input. Line numbers are 1-based.
class ParseError : public std::runtime_error
{
public:
  ParseError(std::size_t line, const std::string& detail)
    : std::runtime_error("line " + std::to_string(line) + ": " + detail)
    , line_(line)
  {
  }

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

//! Samples with zero spread cannot produce an automatic KDE bandwidth.
class DegenerateDistribution : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace ticktrack
