/*
   Copyright 2026 The kraw authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef KRAW_VERIFY_HPP
#define KRAW_VERIFY_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kraw/preal.hpp"
#include "kraw/rational.hpp"

namespace kraw {

/// Geometric N grid plus the sampling regime of the sweep.
struct GridSpec {
  long base = 1L << 10;
  long ratio = 2;
  int count = 8;
  std::string regime = "fixed-v";  // or "v=N^alpha"
  double alpha = 0.0;
  /// Sample density for sup-norms over an interval (points per unit).
  int samples_per_unit = 64;

  std::vector<long> n_values() const;
  void validate() const;  // >= 5 values, ratio >= 2
};

/// Grid of (N, residual) pairs with the fitted log-log slope.
struct ConvergenceReport {
  std::string claim;
  std::vector<long> grid_n;
  std::vector<double> residual;           // per-N raw residual (sup where applicable)
  std::vector<double> weighted_residual;  // after the claim's normalization
  std::vector<long> exact_hits;           // N values whose residual was exactly zero

  double slope = 0.0;
  double slope_stderr = 0.0;
  std::optional<double> target_slope;
  double tolerance = 0.25;
  bool one_sided = false;  // pass iff slope <= target + tolerance
  bool require_decreasing = false;
  bool monotone_decreasing = false;

  std::string verdict;  // "pass" | "fail" | "exact" | "degenerate"
  bool pass = false;
  bool exact = false;

  long precision_bits = PReal::kDefaultPrecision;
  unsigned long seed = 0;
  double wall_ms = 0.0;

  /// Fully-resolved configuration, echoed in order into every serialization.
  std::vector<std::pair<std::string, std::string>> config;
};

/// Least-squares slope of log residual vs log N over the grid. Residuals that
/// are exactly zero (or under the precision noise floor) are excluded and
/// recorded as exact hits; fewer than 3 nonzero residuals yields the verdict
/// "exact" (all hits) or "degenerate" instead of a slope.
ConvergenceReport estimate_order(const std::function<PReal(long)>& residual_fn,
                                 const GridSpec& grid,
                                 long precision_bits = PReal::kDefaultPrecision);

/// Fits slope/stderr from grid_n and weighted_residual already stored in the
/// report, applies the pass criteria, and sets the verdict. Sweeps that build
/// their residual columns directly call this instead of estimate_order.
void finalize_report(ConvergenceReport& report);

enum class Claim {
  thm1,
  thm1_diff,
  thm2,
  cor1,
  cor2,
  sharapudinov,
  lemma1,
  m_v_simplified,
  orthogonality,
};

Claim claim_from_string(const std::string& s);
std::string claim_name(Claim c);
std::vector<std::string> claim_names();

struct SweepConfig {
  Rational p = Rational(1, 2);
  long n = 0;
  long M = 0;
  long r = 0;   // derivative order (thm1_diff)
  long i = 0;   // lattice shift (cor2)
  double A = 1.0;
  Rational v = Rational(1);
  Rational x = Rational(3, 5);  // scaled coordinate for pointwise claims
  long ortho_N = 20;            // lattice size for the orthogonality claim
  GridSpec grid;
  long precision_bits = PReal::kDefaultPrecision;

  std::optional<double> target_slope;  // overrides the claim's default when set
  double tolerance = 0.25;
  bool one_sided = false;
  bool require_decreasing = false;

  /// Re-run the slope fit at doubled precision and require agreement
  /// within 0.05 slope units.
  bool precision_doubling_check = false;
};

/// Runs the residual sweep for one claim and fits its order. Defaults for
/// target slope / tolerance / sidedness are claim-specific; config overrides.
ConvergenceReport uniform_sweep(Claim claim, const SweepConfig& cfg);

/// Deterministic serializations. Wall time is only emitted when
/// include_timings is set, so identical configs give identical bytes.
std::string report_to_json(const ConvergenceReport& report, bool include_timings = false);
std::string report_to_csv(const ConvergenceReport& report, bool include_timings = false);

}  // namespace kraw

#endif  // KRAW_VERIFY_HPP
