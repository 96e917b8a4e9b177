#include "defdyn/lp.hpp"

#include "defdyn/error.hpp"

namespace defdyn {

  std::optional<std::vector<Rational>> feasible_point(
      std::vector<std::vector<Rational>> a,
      std::vector<Rational>              b) {
    std::size_t const m = a.size();
    if (b.size() != m) {
      throw InvalidArgument("feasible_point: row count mismatch");
    }
    std::size_t const n = m == 0 ? 0 : a.front().size();
    for (auto const& row : a) {
      if (row.size() != n) {
        throw InvalidArgument("feasible_point: ragged constraint matrix");
      }
    }
    if (m == 0) {
      return std::vector<Rational>(n);
    }

    for (std::size_t i = 0; i < m; ++i) {
      if (b[i] < 0) {
        for (auto& x : a[i]) {
          x = -x;
        }
        b[i] = -b[i];
      }
    }

    // Tableau over columns x_0..x_{n-1}, artificials a_0..a_{m-1}, rhs.
    std::size_t const cols = n + m;
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols + 1));
    std::vector<std::size_t>           basis(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        t[i][j] = a[i][j];
      }
      t[i][n + i] = 1;
      t[i][cols]  = b[i];
      basis[i]    = n + i;
    }
    // Reduced costs of "minimise the sum of artificials".
    std::vector<Rational> cost(cols + 1);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j <= cols; ++j) {
        if (j < n || j == cols) {
          cost[j] -= t[i][j];
        }
      }
    }

    for (;;) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols; ++j) {
        if (cost[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols) {
        break;
      }
      std::size_t leave = m;
      Rational    best;
      for (std::size_t i = 0; i < m; ++i) {
        if (t[i][enter] > 0) {
          Rational const ratio = t[i][cols] / t[i][enter];
          if (leave == m || ratio < best
              || (ratio == best && basis[i] < basis[leave])) {
            leave = i;
            best  = ratio;
          }
        }
      }
      if (leave == m) {
        throw Error("feasible_point: phase-1 objective unbounded");
      }
      Rational const piv = t[leave][enter];
      for (auto& x : t[leave]) {
        x /= piv;
      }
      for (std::size_t i = 0; i < m; ++i) {
        if (i != leave && t[i][enter] != 0) {
          Rational const f = t[i][enter];
          for (std::size_t j = 0; j <= cols; ++j) {
            t[i][j] -= f * t[leave][j];
          }
        }
      }
      if (cost[enter] != 0) {
        Rational const f = cost[enter];
        for (std::size_t j = 0; j <= cols; ++j) {
          cost[j] -= f * t[leave][j];
        }
      }
      basis[leave] = enter;
    }

    if (cost[cols] != 0) {
      return std::nullopt;
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < n) {
        x[basis[i]] = t[i][cols];
      }
    }
    return x;
  }

}  // namespace defdyn
