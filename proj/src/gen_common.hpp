#pragma once

#include <cstddef>
#include <limits>
#include <string>

#include "coax/errors.hpp"

namespace coax::detail {

inline std::size_t mul_sat(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    return std::numeric_limits<std::size_t>::max();
  }
  return a * b;
}

inline std::size_t pow_sat(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r = mul_sat(r, base);
  return r;
}

// Running rule count against a cap; reserve() before enumerating a family.
class RuleBudget {
 public:
  explicit RuleBudget(std::size_t cap) : cap_(cap) {}

  void reserve(std::size_t n) {
    if (n > cap_ - total_) {
      std::size_t requested = n > std::numeric_limits<std::size_t>::max() - total_
                                  ? std::numeric_limits<std::size_t>::max()
                                  : total_ + n;
      throw InstantiationTooLarge(requested, cap_);
    }
    total_ += n;
  }

 private:
  std::size_t cap_;
  std::size_t total_ = 0;
};

// Identifiers that would read back as something else in a .coax file.
inline bool reserved_name(const std::string& s) { return s == "inf"; }

}  // namespace coax::detail
