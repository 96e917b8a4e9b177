#pragma once

#include <atomic>
#include <cstdint>
#include <numeric>
#include <vector>

#include "defdyn/error.hpp"

namespace defdyn {

  // Default upper bound on any modulus produced by lcm unification.
  inline constexpr std::uint64_t kDefaultLevelGuard = 1'000'000;

  namespace detail {
    inline std::atomic<std::uint64_t> level_guard{kDefaultLevelGuard};
  }

  // Process-wide guard used by lcm unification (set from `--level-guard`).
  inline std::uint64_t level_guard() noexcept {
    return detail::level_guard.load(std::memory_order_relaxed);
  }
  inline void set_level_guard(std::uint64_t guard) noexcept {
    detail::level_guard.store(guard, std::memory_order_relaxed);
  }

  // Largest explicit window (in integers) a Presburger set may carry.
  inline constexpr std::int64_t kWindowGuard = 10'000'000;

  inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
      throw GuardExceeded("integer overflow in addition");
    }
    return r;
  }

  inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) {
      throw GuardExceeded("integer overflow in subtraction");
    }
    return r;
  }

  inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
      throw GuardExceeded("integer overflow in multiplication");
    }
    return r;
  }

  inline std::int64_t checked_neg(std::int64_t a) {
    return checked_sub(0, a);
  }

  // Least nonnegative residue of x modulo n (n >= 1).
  inline std::uint64_t mod_floor(std::int64_t x, std::uint64_t n) {
    auto const m = static_cast<std::int64_t>(n);
    std::int64_t r = x % m;
    if (r < 0) {
      r += m;
    }
    return static_cast<std::uint64_t>(r);
  }

  inline std::uint64_t lcm_guarded(std::uint64_t a,
                                   std::uint64_t b,
                                   std::uint64_t guard = level_guard()) {
    std::uint64_t const g = std::gcd(a, b);
    std::uint64_t const l = (a / g) * b;
    if (l > guard) {
      throw GuardExceeded("lcm " + std::to_string(l) + " exceeds level guard "
                          + std::to_string(guard));
    }
    return l;
  }

  inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (n % d == 0) {
        out.push_back(d);
      }
    }
    return out;
  }

  // lcm(1, ..., b)
  inline std::uint64_t lcm_upto(std::uint64_t b,
                                std::uint64_t guard = level_guard()) {
    std::uint64_t l = 1;
    for (std::uint64_t k = 2; k <= b; ++k) {
      l = lcm_guarded(l, k, guard);
    }
    return l;
  }

}  // namespace defdyn
