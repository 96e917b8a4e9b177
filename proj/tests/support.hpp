#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "defdyn/defset.hpp"
#include "defdyn/typespace.hpp"

namespace defdyn::testing {

  // Random Presburger set: period <= max_period, window inside [-span, span].
  inline DefinableSet random_presburger(std::mt19937_64& rng,
                                        std::uint64_t    max_period = 6,
                                        std::int64_t     span       = 12) {
    std::uniform_int_distribution<std::uint64_t> per(1, max_period);
    std::bernoulli_distribution                  coin(0.5);
    auto const                                   n = per(rng);
    std::vector<bool>                            up(n), down(n);
    for (std::uint64_t r = 0; r < n; ++r) {
      up[r]   = coin(rng);
      down[r] = coin(rng);
    }
    std::uniform_int_distribution<std::int64_t> at(-span, span);
    std::int64_t                                 lo = at(rng);
    std::int64_t                                 hi = at(rng);
    if (lo > hi) {
      std::swap(lo, hi);
    }
    std::vector<bool> window(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t i = 0; i < window.size(); ++i) {
      window[i] = coin(rng);
    }
    return presburger(PresburgerSet::make(n, up, down, lo, hi, window));
  }

  // Every point of the level-n limit part, in space order.
  inline std::vector<TypePoint> limit_part(std::uint64_t n) {
    std::vector<TypePoint> out;
    for (Sign s : {Sign::plus, Sign::minus}) {
      for (std::uint64_t r = 0; r < n; ++r) {
        out.push_back(TypePoint::limit(s, static_cast<std::int64_t>(r), n));
      }
    }
    return out;
  }

  inline TypePoint lim(char s, std::int64_t r, std::uint64_t n) {
    return TypePoint::limit(s == '+' ? Sign::plus : Sign::minus, r, n);
  }

  inline TypePoint real(std::int64_t v) {
    return TypePoint::realized(GroupElement::integer(v));
  }

}  // namespace defdyn::testing
