#pragma once

#include <stdexcept>
#include <string>

namespace hdeform {

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

class ParseError : public std::invalid_argument {
 public:
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

// The value at q = 1 is infinite.
class PoleAtQ1 : public std::domain_error {
 public:
  PoleAtQ1(const std::string& value, int order)
      : std::domain_error("pole of order " + std::to_string(-order) + " at q=1: " + value),
        order_(order) {}
  int order() const { return order_; }

 private:
  int order_;
};

class NonPolynomialInH : public std::domain_error {
 public:
  explicit NonPolynomialInH(const std::string& value)
      : std::domain_error("value at q=1 is not polynomial in h: " + value) {}
};

}  // namespace hdeform
