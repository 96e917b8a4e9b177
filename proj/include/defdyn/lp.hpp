#pragma once

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace defdyn {

  using Rational = boost::multiprecision::cpp_rational;

  // A vertex of {x >= 0 : Ax = b}, or nullopt when the system is
  // infeasible. Exact two-phase simplex (phase 1 only) with Bland's rule.
  std::optional<std::vector<Rational>> feasible_point(
      std::vector<std::vector<Rational>> a,
      std::vector<Rational>              b);

}  // namespace defdyn
