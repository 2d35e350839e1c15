#pragma once

#include <stdexcept>
#include <string>

namespace eulerlab {

/// Bad argument or precondition violation.
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class singular_curve_error : public input_error {
 public:
  using input_error::input_error;
};

/// A quantity left the domain where it is defined (vanishing Euler factor, log of zero).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class range_error : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// An iterative method stopped without meeting its tolerance. Carries the last estimate.
class numerical_error : public std::runtime_error {
 public:
  numerical_error(const std::string& what, double partial_estimate = 0.0)
      : std::runtime_error(what), partial_estimate_(partial_estimate) {}
  double partial_estimate() const noexcept { return partial_estimate_; }

 private:
  double partial_estimate_;
};

/// Double precision cannot resolve the AFE at this height.
class precision_error : public numerical_error {
 public:
  precision_error(const std::string& what, double height)
      : numerical_error(what), height_(height) {}
  double height() const noexcept { return height_; }

 private:
  double height_;
};

class rank_undetermined_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

class near_zero_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& field, std::size_t line, const std::string& detail)
      : std::runtime_error("parse error at line " + std::to_string(line) + ", field '" + field +
                           "': " + detail),
        field_(field),
        line_(line) {}
  const std::string& field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string field_;
  std::size_t line_;
};

class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
 public:
  io_error(const std::string& path, const std::string& detail)
      : std::runtime_error(path + ": " + detail), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace eulerlab
