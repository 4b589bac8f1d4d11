#pragma once

#include <cstddef>
#include <string>

#include "pwk/errors.hpp"

namespace pwk::algebra {

inline constexpr std::size_t kMaxTerms = 1'000'000;
inline constexpr int kMaxOrder = 12;

inline void check_term_count(std::size_t n, const char* what) {
  if (n > kMaxTerms) {
    throw ResourceLimit(std::string(what) + ": term count " + std::to_string(n) +
                        " exceeds limit " + std::to_string(kMaxTerms));
  }
}

}  // namespace pwk::algebra
