#pragma once

// Dense tableau simplex for LPs of the form
//   max c.x  subject to  A x <= b, x >= 0,  with b >= 0,
// started from the slack basis. Bland's rule throughout, so it terminates
// for both exact rational and double scalars. Problem sizes here are tiny
// (at most a few hundred rows/columns).

#include <stdexcept>
#include <vector>

namespace torpedo {

template <class Scalar>
struct SimplexResult {
  std::vector<Scalar> x;   // primal solution, length n
  std::vector<Scalar> y;   // dual values (row prices), length m
  Scalar objective{};
  int iterations = 0;
};

template <class Scalar>
SimplexResult<Scalar> simplex_max(const std::vector<std::vector<Scalar>>& columns,
                                  const std::vector<Scalar>& objective,
                                  const std::vector<Scalar>& rhs,
                                  const Scalar& tol = Scalar(0)) {
  const int n = (int)columns.size();
  const int m = (int)rhs.size();
  for (const auto& col : columns)
    if ((int)col.size() != m) throw std::invalid_argument("simplex_max: column size mismatch");
  for (const auto& b : rhs)
    if (b < Scalar(0)) throw std::invalid_argument("simplex_max: rhs must be nonnegative");

  const int width = n + m + 1;  // structural | slack | rhs
  std::vector<std::vector<Scalar>> tab(m, std::vector<Scalar>(width, Scalar(0)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) tab[i][j] = columns[j][i];
    tab[i][n + i] = Scalar(1);
    tab[i][width - 1] = rhs[i];
  }
  // Reduced-cost row: z_j - c_j, starts at -c for structural columns.
  std::vector<Scalar> zrow(width, Scalar(0));
  for (int j = 0; j < n; ++j) zrow[j] = -objective[j];
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  SimplexResult<Scalar> result;
  const int max_iter = 200000;
  for (;; ++result.iterations) {
    if (result.iterations > max_iter) throw std::runtime_error("simplex_max: iteration limit");
    // Entering column: most negative reduced cost (Dantzig) for inexact
    // scalars, dropping to Bland's smallest-index rule for exact arithmetic
    // and as an anti-cycling fallback after many pivots.
    const bool bland = tol == Scalar(0) || result.iterations > 20000;
    int enter = -1;
    for (int j = 0; j < width - 1; ++j)
      if (zrow[j] < -tol && (enter < 0 || (!bland && zrow[j] < zrow[enter]))) {
        enter = j;
        if (bland) break;
      }
    if (enter < 0) break;
    // Ratio test; Bland tie-break on smallest basis index.
    int leave = -1;
    Scalar best_ratio{};
    for (int i = 0; i < m; ++i) {
      if (tab[i][enter] > tol) {
        Scalar ratio = tab[i][width - 1] / tab[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) throw std::runtime_error("simplex_max: unbounded LP");
    // Pivot on (leave, enter).
    const Scalar pivot = tab[leave][enter];
    for (int j = 0; j < width; ++j) tab[leave][j] /= pivot;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      const Scalar factor = tab[i][enter];
      if (factor == Scalar(0)) continue;
      for (int j = 0; j < width; ++j) tab[i][j] -= factor * tab[leave][j];
    }
    const Scalar zfactor = zrow[enter];
    if (zfactor != Scalar(0))
      for (int j = 0; j < width; ++j) zrow[j] -= zfactor * tab[leave][j];
    basis[leave] = enter;
  }

  result.x.assign(n, Scalar(0));
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) result.x[basis[i]] = tab[i][width - 1];
  result.y.assign(m, Scalar(0));
  for (int i = 0; i < m; ++i) result.y[i] = zrow[n + i];
  result.objective = Scalar(0);
  for (int j = 0; j < n; ++j) result.objective += objective[j] * result.x[j];
  return result;
}

}  // namespace torpedo
