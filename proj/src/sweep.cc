// SPDX-License-Identifier: Apache-2.0
#include "smprivacy/sweep.h"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "smprivacy/ems.h"
#include "smprivacy/errors.h"
#include "smprivacy/leakage.h"

namespace smprivacy {

Grid expand_grid(const std::vector<int>& alphas, const std::vector<int>& betas,
                 const std::vector<double>& ratios) {
  if (alphas.empty()) throw DomainError("grid has no alpha values");
  if (betas.empty() == ratios.empty()) {
    throw DomainError("grid needs exactly one of beta values or beta/alpha ratios");
  }
  Grid grid;
  for (int alpha : alphas) {
    if (alpha < 1) {
      grid.skipped.push_back({"alpha=" + std::to_string(alpha), "alpha must be >= 1"});
      continue;
    }
    if (!betas.empty()) {
      for (int beta : betas) {
        if (beta < 0) {
          grid.skipped.push_back({"alpha=" + std::to_string(alpha) + " beta=" + std::to_string(beta),
                                  "beta must be >= 0"});
          continue;
        }
        grid.points.push_back({alpha, beta});
      }
      continue;
    }
    for (double ratio : ratios) {
      const double beta = ratio * alpha;
      const double rounded = std::round(beta);
      if (!(beta >= 0.0) || std::abs(beta - rounded) > 1e-9) {
        grid.skipped.push_back({"alpha=" + std::to_string(alpha) + " ratio=" + format_number(ratio),
                                "beta = ratio * alpha is not a non-negative integer"});
        continue;
      }
      grid.points.push_back({alpha, static_cast<int>(rounded)});
    }
  }
  if (grid.points.empty()) throw DomainError("parameter grid is empty");
  return grid;
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // no "-0"
  std::ostringstream os;
  os << std::setprecision(9) << v;
  return os.str();
}

std::string CsvTable::to_string() const {
  std::ostringstream os;
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
  return os.str();
}

CsvTable bound_table(const Grid& grid) {
  CsvTable table;
  table.header = {"beta_over_alpha", "alpha", "beta", "bound"};
  table.skipped = grid.skipped;
  for (const auto& p : grid.points) {
    const EmsConfig cfg(p.alpha, p.alpha, p.beta, 0);
    table.rows.push_back({format_number(static_cast<double>(p.beta) / p.alpha),
                          std::to_string(p.alpha), std::to_string(p.beta),
                          format_number(theorem1_bound(cfg))});
  }
  return table;
}

CsvTable avg_bound_table(const Grid& grid, const std::vector<double>& mus,
                         std::optional<std::size_t> n) {
  if (mus.empty()) throw DomainError("no mean values given");
  if (n && *n == 0) throw DomainError("horizon must be >= 1");
  CsvTable table;
  table.header = {"mu_over_alpha", "beta_over_alpha", "alpha", "beta", "n", "bound", "clamped"};
  table.skipped = grid.skipped;
  for (const auto& p : grid.points) {
    for (double mu : mus) {
      if (!(mu >= 0.0) || mu > p.alpha) {
        throw DomainError("mean " + format_number(mu) + " outside [0, alpha=" +
                          std::to_string(p.alpha) + "]");
      }
    }
  }
  for (const auto& p : grid.points) {
    const EmsConfig cfg(p.alpha, p.alpha, p.beta, 0);
    for (double mu : mus) {
      const Theorem3Bound b = evaluate_theorem3_bound(cfg, mu, n);
      table.rows.push_back({format_number(mu / p.alpha),
                            format_number(static_cast<double>(p.beta) / p.alpha),
                            std::to_string(p.alpha), std::to_string(p.beta),
                            n ? std::to_string(*n) : "inf", format_number(b.value),
                            b.clamped ? "1" : "0"});
    }
  }
  return table;
}

}  // namespace smprivacy
