#include "hyperfit/yeoh.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperfit {
namespace {

void require_positive_stretch(double lambda1) {
  if (!(lambda1 > 0.0) || !std::isfinite(lambda1)) {
    throw std::domain_error("stretch ratio must be positive and finite");
  }
}

// I1 - 3 for the uniaxial incompressible state, in the factored form
// (lambda - 1)^2 (lambda + 2) / lambda. Algebraically identical to
// lambda^2 + 2/lambda - 3 but non-negative under rounding and exact at
// lambda = 1, which keeps the invariant floor and the reference-state
// zeros bit-exact.
double invariant_excess(double lambda1) {
  const double d = lambda1 - 1.0;
  return d * d * (lambda1 + 2.0) / lambda1;
}

// sum_i i c_i x^(i-1) with x = I1 - 3; the common series factor of the
// stress and loading expressions.
double stress_series(const YeohParameters& p, double x) {
  return p.c1() + x * (2.0 * p.c2() + x * (3.0 * p.c3()));
}

}  // namespace

YeohParameters::YeohParameters(double c1, double c2, double c3)
    : c1_(c1), c2_(c2), c3_(c3) {
  if (!std::isfinite(c1) || !std::isfinite(c2) || !std::isfinite(c3)) {
    throw std::invalid_argument("Yeoh constants must be finite");
  }
  if (!(c1 > 0.0)) {
    throw std::invalid_argument("c1 must be positive (mu = 2 c1 > 0)");
  }
}

StretchState StretchState::uniaxial(double lambda1) {
  require_positive_stretch(lambda1);
  return StretchState(lambda1, 1.0 / std::sqrt(lambda1));
}

SpecimenGeometry::SpecimenGeometry(double l0, double w0, double h0)
    : l0_(l0), w0_(w0), h0_(h0) {
  if (!(l0 > 0.0) || !(w0 > 0.0) || !(h0 > 0.0) || !std::isfinite(l0) ||
      !std::isfinite(w0) || !std::isfinite(h0)) {
    throw std::invalid_argument("specimen dimensions must be positive and finite");
  }
}

double strain_invariant(const StretchState& state) {
  return 3.0 + invariant_excess(state.lambda1());
}

double strain_energy_density(const YeohParameters& params, double lambda1) {
  require_positive_stretch(lambda1);
  const double x = invariant_excess(lambda1);
  return x * (params.c1() + x * (params.c2() + x * params.c3()));
}

double uniaxial_cauchy_stress(const YeohParameters& params, double lambda1) {
  require_positive_stretch(lambda1);
  const double x = invariant_excess(lambda1);
  return 2.0 * (lambda1 * lambda1 - 1.0 / lambda1) * stress_series(params, x);
}

double uniaxial_loading(const YeohParameters& params, const SpecimenGeometry& geom,
                        double lambda1) {
  require_positive_stretch(lambda1);
  const double x = invariant_excess(lambda1);
  return 2.0 * geom.h0() * geom.w0() * (lambda1 - 1.0 / (lambda1 * lambda1)) *
         stress_series(params, x);
}

double tensile_strength(double measured_load_at_break, const SpecimenGeometry& geom,
                        double lambda_eab) {
  if (!(measured_load_at_break >= 0.0) || !std::isfinite(measured_load_at_break)) {
    throw std::domain_error("load at break must be non-negative and finite");
  }
  if (!(lambda_eab >= 1.0) || !std::isfinite(lambda_eab)) {
    throw std::domain_error("elongation-at-break stretch must be >= 1");
  }
  return measured_load_at_break * lambda_eab / geom.reference_area();
}

MaterialProperties derive_properties(const YeohParameters& params,
                                     const SpecimenGeometry& geom, double lambda_eab,
                                     double measured_load_at_break) {
  const double mu = 2.0 * params.c1();
  return MaterialProperties{
      .youngs_modulus = 2.0 * mu * (1.0 + kPoissonRatio),
      .shear_modulus = mu,
      .tensile_strength = tensile_strength(measured_load_at_break, geom, lambda_eab),
      .elongation_at_break = (lambda_eab - 1.0) * 100.0,
      .poisson_ratio = kPoissonRatio,
  };
}

}  // namespace hyperfit
