// SPDX-License-Identifier: Apache-2.0
//
// Closed-form bound curves over parameter grids, rendered as CSV.
#ifndef SMPRIVACY_SWEEP_H_
#define SMPRIVACY_SWEEP_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace smprivacy {

struct GridPoint {
  int alpha = 1;
  int beta = 0;
};

struct GridSkip {
  std::string point;
  std::string reason;
};

struct Grid {
  std::vector<GridPoint> points;
  std::vector<GridSkip> skipped;
};

// Cartesian product of alphas with either explicit betas or beta/alpha
// ratios (exactly one of the two must be non-empty). A ratio whose beta is
// not a non-negative integer is skipped with a reason. Throws DomainError
// when the grid ends up empty.
Grid expand_grid(const std::vector<int>& alphas, const std::vector<int>& betas,
                 const std::vector<double>& ratios);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<GridSkip> skipped;

  std::string to_string() const;
};

// 9 significant digits; "inf" for +infinity.
std::string format_number(double v);

// Rows: beta_over_alpha, alpha, beta, bound where bound = 1/floor((beta+1)/alpha).
CsvTable bound_table(const Grid& grid);

// Rows: mu_over_alpha, beta_over_alpha, alpha, beta, n, bound, clamped.
// mus are absolute means; every mu must lie in [0, alpha] for every alpha
// in the grid (DomainError otherwise). n = nullopt evaluates the limit.
CsvTable avg_bound_table(const Grid& grid, const std::vector<double>& mus,
                         std::optional<std::size_t> n);

}  // namespace smprivacy

#endif  // SMPRIVACY_SWEEP_H_
