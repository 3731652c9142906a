#pragma once

#include <stdexcept>
#include <string>

namespace secpur {

/// Base class for all library errors. The category maps onto CLI exit codes.
class Error : public std::runtime_error {
 public:
  enum class Category { input = 2, numeric = 3, config = 4 };

  Error(Category category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  Category category() const noexcept { return category_; }
  int exit_code() const noexcept { return static_cast<int>(category_); }

 private:
  Category category_;
};

/// Malformed or unreadable input data.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(Category::input, what) {}
};

/// Numeric failure: degenerate geometry, empty distributions, singular formulas.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(Category::numeric, what) {}
};

/// Invalid parameters or configuration.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(Category::config, what) {}
};

/// A slice with no points on one side. Carries the counts so callers can report them.
class DegenerateSlice : public NumericError {
 public:
  DegenerateSlice(long inside, long outside)
      : NumericError("degenerate slice (inside=" + std::to_string(inside) +
                     ", outside=" + std::to_string(outside) + ")"),
        inside_(inside),
        outside_(outside) {}

  long inside() const noexcept { return inside_; }
  long outside() const noexcept { return outside_; }

 private:
  long inside_;
  long outside_;
};

}  // namespace secpur
