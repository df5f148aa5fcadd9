#include "hyperfit/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hyperfit/errors.hpp"

namespace hyperfit {
namespace {

// Basis functions of the loading expression: F1 = sum_j c_j phi_j(lambda)
// with phi_j = 2 h0 w0 (lambda - 1/lambda^2) j (I1 - 3)^(j-1).
Eigen::Vector3d loading_basis(const SpecimenGeometry& geom, double lambda1) {
  const double d = lambda1 - 1.0;
  const double x = d * d * (lambda1 + 2.0) / lambda1;  // I1 - 3
  const double pref = 2.0 * geom.h0() * geom.w0() * (lambda1 - 1.0 / (lambda1 * lambda1));
  return {pref, pref * 2.0 * x, pref * 3.0 * x * x};
}

struct Problem {
  Eigen::MatrixX3d basis;   // n x 3
  Eigen::VectorXd loads;    // n
  Eigen::VectorXd weights;  // n, all 1 when unweighted
};

Problem assemble(const TensileRecord& record, const FitConfig& config) {
  const std::size_t n = record.break_index() + 1;
  Problem p;
  p.basis.resize(static_cast<Eigen::Index>(n), 3);
  p.loads.resize(static_cast<Eigen::Index>(n));
  p.weights = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));

  double max_load = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const TensileSample& s = record.samples()[i];
    p.basis.row(static_cast<Eigen::Index>(i)) =
        loading_basis(record.geometry(), s.lambda1).transpose();
    p.loads[static_cast<Eigen::Index>(i)] = s.load_n;
    max_load = std::max(max_load, std::abs(s.load_n));
  }
  if (max_load == 0.0) {
    throw DegenerateFitError("all loads are zero: no deformation signal to fit");
  }
  if (config.weighted) {
    const double floor = 1e-3 * max_load;  // keeps near-zero loads from dominating
    for (Eigen::Index i = 0; i < p.loads.size(); ++i) {
      p.weights[i] = 1.0 / std::max(std::abs(p.loads[i]), floor);
    }
  }
  return p;
}

double objective(const Problem& p, const Eigen::Vector3d& c) {
  return (p.weights.asDiagonal() * (p.basis * c - p.loads)).squaredNorm();
}

FitResult finalize(const TensileRecord& record, const Problem& p,
                   const Eigen::Vector3d& c, bool converged, int iterations,
                   const FitConfig& config) {
  if (c[0] <= config.c1_lower_bound) {
    throw DegenerateFitError("fit degenerate: c1 driven to its lower bound (" +
                             std::to_string(config.c1_lower_bound) + " MPa) for specimen '" +
                             record.specimen_id() + "'");
  }
  const Eigen::VectorXd residuals = p.basis * c - p.loads;  // N, unweighted
  FitResult result{
      .params = YeohParameters(c[0], c[1], c[2]),
      .residual_rms = std::sqrt(residuals.squaredNorm() / static_cast<double>(residuals.size())),
      .per_point_residuals = std::vector<double>(residuals.begin(), residuals.end()),
      .converged = converged,
      .iterations = iterations,
  };
  return result;
}

// Direct solve of the linear least-squares problem; one-bound active-set
// projection for c1.
Eigen::Vector3d solve_linear(const Problem& p, const FitConfig& config) {
  Eigen::Vector3d c =
      (p.weights.asDiagonal() * p.basis).colPivHouseholderQr().solve(p.weights.asDiagonal() * p.loads);
  if (c[0] < config.c1_lower_bound) {
    // re-solve for (c2, c3) with c1 pinned at the bound
    Eigen::MatrixX2d reduced = p.basis.rightCols<2>();
    Eigen::VectorXd rhs = p.loads - p.basis.col(0) * config.c1_lower_bound;
    Eigen::Vector2d tail = (p.weights.asDiagonal() * reduced)
                               .colPivHouseholderQr()
                               .solve(p.weights.asDiagonal() * rhs);
    c << config.c1_lower_bound, tail[0], tail[1];
  }
  return c;
}

// Damped Gauss-Newton with multiplicative damping: steps are accepted only
// when the objective decreases, so the accepted-objective sequence is
// non-increasing by construction.
Eigen::Vector3d solve_damped(const Problem& p, const FitConfig& config,
                             const Eigen::Vector3d& start, bool& converged, int& iterations,
                             FitTrace* trace) {
  const Eigen::MatrixX3d weighted_basis = p.weights.asDiagonal() * p.basis;
  const Eigen::Matrix3d normal = weighted_basis.transpose() * weighted_basis;
  const Eigen::VectorXd weighted_loads = p.weights.asDiagonal() * p.loads;

  Eigen::Vector3d c = start;
  c[0] = std::max(c[0], config.c1_lower_bound);
  double obj = objective(p, c);
  if (trace) trace->objective.push_back(obj);

  double damping = 1e-3;
  converged = false;
  iterations = 0;
  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    iterations = iter;
    const Eigen::Vector3d gradient = weighted_basis.transpose() * (weighted_basis * c - weighted_loads);

    bool accepted = false;
    double new_obj = obj;
    Eigen::Vector3d candidate = c;
    for (int attempt = 0; attempt < 25; ++attempt) {
      Eigen::Matrix3d damped = normal;
      damped.diagonal() += damping * normal.diagonal();
      const Eigen::Vector3d step = damped.ldlt().solve(-gradient);
      candidate = c + step;
      candidate[0] = std::max(candidate[0], config.c1_lower_bound);
      new_obj = objective(p, candidate);
      if (new_obj < obj) {
        accepted = true;
        damping = std::max(damping / 3.0, 1e-12);
        break;
      }
      damping *= 10.0;
    }
    if (!accepted) {
      // no descent direction left; treat the stall as convergence
      converged = true;
      break;
    }
    c = candidate;
    if (trace) trace->objective.push_back(new_obj);
    const double rel_change = (obj - new_obj) / std::max(obj, 1e-300);
    obj = new_obj;
    if (rel_change < config.tol) {
      converged = true;
      break;
    }
  }
  return c;
}

}  // namespace

TensileRecord::TensileRecord(std::string specimen_id, std::string composition_label,
                             SpecimenGeometry geometry, std::vector<TensileSample> samples,
                             std::optional<std::size_t> break_index)
    : specimen_id_(std::move(specimen_id)),
      composition_label_(std::move(composition_label)),
      geometry_(geometry),
      samples_(std::move(samples)),
      break_index_(break_index.value_or(samples_.empty() ? 0 : samples_.size() - 1)) {
  if (specimen_id_.empty()) throw std::invalid_argument("specimen_id must not be empty");
  if (samples_.size() < 5) {
    throw std::invalid_argument("specimen '" + specimen_id_ + "' needs at least 5 samples");
  }
  if (!(samples_.front().lambda1 >= 1.0)) {
    throw std::invalid_argument("specimen '" + specimen_id_ +
                                "': first stretch must be >= 1 (tension-only data)");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i].lambda1) || !std::isfinite(samples_[i].load_n) ||
        samples_[i].load_n < 0.0) {
      throw std::invalid_argument("specimen '" + specimen_id_ +
                                  "': loads must be finite and non-negative");
    }
    if (i > 0 && !(samples_[i].lambda1 > samples_[i - 1].lambda1)) {
      throw std::invalid_argument("specimen '" + specimen_id_ +
                                  "': stretch must be strictly increasing");
    }
  }
  if (break_index_ >= samples_.size()) {
    throw std::invalid_argument("break index out of range");
  }
}

YeohParameters initial_guess(const TensileRecord& record) {
  const auto& samples = record.samples();
  const TensileSample* pick = nullptr;
  for (const auto& s : samples) {
    if (s.lambda1 > 1.0 && s.lambda1 <= 1.05 && s.load_n > 0.0) {
      pick = &s;
      break;
    }
  }
  if (!pick) {
    for (const auto& s : samples) {
      if (s.lambda1 > 1.0 && s.load_n > 0.0) {
        pick = &s;
        break;
      }
    }
  }
  if (!pick) {
    throw DegenerateFitError("all loads are zero: cannot seed the fit for specimen '" +
                             record.specimen_id() + "'");
  }
  const SpecimenGeometry& g = record.geometry();
  const double lam = pick->lambda1;
  const double denom = 2.0 * g.h0() * g.w0() * (lam - 1.0 / (lam * lam));
  const double c1 = pick->load_n / denom;
  return YeohParameters(std::max(c1, 1e-6), 0.0, 0.0);
}

FitResult fit_yeoh(const TensileRecord& record, const FitConfig& config, FitTrace* trace) {
  if (!(config.tol > 0.0) || config.max_iterations < 1) {
    throw std::invalid_argument("fit tolerances must be positive");
  }
  const Problem p = assemble(record, config);

  if (!config.weighted) {
    const Eigen::Vector3d c = solve_linear(p, config);
    if (trace) trace->objective.push_back(objective(p, c));
    return finalize(record, p, c, /*converged=*/true, /*iterations=*/1, config);
  }

  Eigen::Vector3d start;
  {
    const YeohParameters seed = initial_guess(record);
    start << seed.c1(), seed.c2(), seed.c3();
  }
  bool converged = false;
  int iterations = 0;
  const Eigen::Vector3d c = solve_damped(p, config, start, converged, iterations, trace);
  return finalize(record, p, c, converged, iterations, config);
}

CompositionSummary summarize_composition(std::span<const SpecimenResult> results) {
  if (results.size() < 2) {
    throw std::invalid_argument("composition statistics need at least 2 specimens");
  }
  const std::string& label = results.front().composition_label;
  for (const auto& r : results) {
    if (r.composition_label != label) {
      throw std::invalid_argument("composition statistics mix labels '" + label + "' and '" +
                                  r.composition_label + "'");
    }
  }

  auto stat = [&](auto&& field) {
    double sum = 0.0;
    for (const auto& r : results) sum += field(r);
    const double mean = sum / static_cast<double>(results.size());
    double ss = 0.0;
    for (const auto& r : results) {
      const double d = field(r) - mean;
      ss += d * d;
    }
    return ValueStat{mean, std::sqrt(ss / static_cast<double>(results.size() - 1))};
  };

  return CompositionSummary{
      .composition_label = label,
      .specimen_count = results.size(),
      .c1 = stat([](const SpecimenResult& r) { return r.fit.params.c1(); }),
      .c2 = stat([](const SpecimenResult& r) { return r.fit.params.c2(); }),
      .c3 = stat([](const SpecimenResult& r) { return r.fit.params.c3(); }),
      .youngs_modulus = stat([](const SpecimenResult& r) { return r.properties.youngs_modulus; }),
      .tensile_strength = stat([](const SpecimenResult& r) { return r.properties.tensile_strength; }),
      .elongation_at_break =
          stat([](const SpecimenResult& r) { return r.properties.elongation_at_break; }),
  };
}

}  // namespace hyperfit
