#ifndef EVOCOUNT_ERRORS_HPP
#define EVOCOUNT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace evocount {

/* Bad user-facing input: non-prime p, q not a prime power, mixed field
 * contexts, dimension mismatch, ... */
class invalid_input : public std::runtime_error {
 public:
  explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

/* A requested computation exceeds the configured enumeration budget.
 * Carries the budget that would have been required, when known. */
class budget_exceeded : public std::runtime_error {
 public:
  budget_exceeded(const std::string& what, unsigned long long required,
                  unsigned long long budget)
      : std::runtime_error(what), required_(required), budget_(budget) {}

  unsigned long long required() const { return required_; }
  unsigned long long budget() const { return budget_; }

 private:
  unsigned long long required_;
  unsigned long long budget_;
};

/* Violation of an internal exactness guarantee (inexact division,
 * overflow, rank/determinant disagreement). Never caught and "fixed up";
 * it means the engine itself is wrong. */
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace evocount

#endif
