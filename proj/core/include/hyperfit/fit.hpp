#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperfit/yeoh.hpp"

namespace hyperfit {

struct TensileSample {
  double lambda1;
  double load_n;
};

/// One specimen's uniaxial pull-to-break measurement. Samples must be
/// strictly increasing in stretch, start at lambda1 >= 1, and carry
/// finite non-negative loads; at least 5 samples are required. The break
/// index marks the last usable sample (elongation at break) and defaults
/// to the final one.
class TensileRecord {
 public:
  TensileRecord(std::string specimen_id, std::string composition_label,
                SpecimenGeometry geometry, std::vector<TensileSample> samples,
                std::optional<std::size_t> break_index = std::nullopt);

  const std::string& specimen_id() const { return specimen_id_; }
  const std::string& composition_label() const { return composition_label_; }
  const SpecimenGeometry& geometry() const { return geometry_; }
  const std::vector<TensileSample>& samples() const { return samples_; }
  std::size_t break_index() const { return break_index_; }

  double lambda_at_break() const { return samples_[break_index_].lambda1; }
  double load_at_break() const { return samples_[break_index_].load_n; }

 private:
  std::string specimen_id_;
  std::string composition_label_;
  SpecimenGeometry geometry_;
  std::vector<TensileSample> samples_;
  std::size_t break_index_;
};

struct FitConfig {
  /// Convergence: relative change of the sum-of-squares objective.
  double tol = 1e-10;
  int max_iterations = 200;
  /// Relative residual weighting (1/|load|, floored); selects the damped
  /// iterative solver instead of the direct linear solve.
  bool weighted = false;
  /// Lower bound on c1 in MPa, enforced by projection.
  double c1_lower_bound = 1e-6;
};

struct FitResult {
  YeohParameters params;
  double residual_rms;                     // N, unweighted
  std::vector<double> per_point_residuals; // N, model - measured
  bool converged;
  int iterations;
};

/// Objective values after each accepted solver step (index 0 is the
/// starting objective). Pass to fit_yeoh to observe solver progress.
struct FitTrace {
  std::vector<double> objective;
};

/// Small-strain seed: inverts the loading expression at the first usable
/// low-stretch sample (lambda1 <= 1.05 when available) for c1, with
/// c2 = c3 = 0. Throws DegenerateFitError when every load is zero.
YeohParameters initial_guess(const TensileRecord& record);

/// Least-squares estimate of the Yeoh constants from measured loads over
/// the samples up to the break index. The loading expression is linear in
/// (c1, c2, c3), so the unweighted path is a direct linear solve; the
/// weighted path runs damped Gauss-Newton iterations that only accept
/// objective decreases. Deterministic for fixed inputs. Throws
/// DegenerateFitError when c1 is driven to its lower bound.
FitResult fit_yeoh(const TensileRecord& record, const FitConfig& config = {},
                   FitTrace* trace = nullptr);

/// Per-specimen fit plus its derived properties, tagged with identity for
/// aggregation.
struct SpecimenResult {
  std::string specimen_id;
  std::string composition_label;
  FitResult fit;
  MaterialProperties properties;
};

struct ValueStat {
  double mean;
  double stddev;  // sample (n-1) standard deviation
};

/// Mean and spread of the fitted constants and derived properties across
/// the specimens of one composition.
struct CompositionSummary {
  std::string composition_label;
  std::size_t specimen_count;
  ValueStat c1;
  ValueStat c2;
  ValueStat c3;
  ValueStat youngs_modulus;
  ValueStat tensile_strength;
  ValueStat elongation_at_break;
};

/// Aggregates >= 2 specimen results that share one composition label.
CompositionSummary summarize_composition(std::span<const SpecimenResult> results);

}  // namespace hyperfit
