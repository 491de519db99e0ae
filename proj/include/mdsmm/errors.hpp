#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mdsmm {

/// Base class for every error raised by the toolkit.
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not conform.
class dimension_error : public error {
  public:
    using error::error;
};

/// An argument violates a documented precondition (bad label set, non-positive cost, ...).
class input_error : public error {
  public:
    using error::error;
};

/// Malformed file content. Carries the 1-based line number where parsing stopped (0 if unknown).
class parse_error : public error {
  public:
    parse_error(const std::string &what, std::size_t line)
        : error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// File could not be opened, read or written.
class io_error : public error {
  public:
    using error::error;
};

/// A label has fewer samples than folds.
class stratification_error : public error {
  public:
    using error::error;
};

/// A bound's confidence budget is exhausted (e.g. the mixing term eats all of delta).
class infeasible_bound_error : public error {
  public:
    using error::error;
};

/// A theorem's side condition on its inputs does not hold.
class precondition_error : public error {
  public:
    using error::error;
};

}  // namespace mdsmm
