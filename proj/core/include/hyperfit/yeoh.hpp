#pragma once

#include <string>

namespace hyperfit {

/// Incompressible materials have Poisson's ratio 1/2; it is a fixed
/// property of the model, not a fit parameter.
inline constexpr double kPoissonRatio = 0.5;

/// The three constants of the third-order reduced-polynomial (Yeoh)
/// strain energy density W = sum_i c_i (I1 - 3)^i, in MPa.
///
/// c1 must be strictly positive (it carries the small-strain shear
/// modulus, mu = 2 c1); c2 and c3 may take either sign.
class YeohParameters {
 public:
  YeohParameters(double c1, double c2, double c3);

  double c1() const { return c1_; }
  double c2() const { return c2_; }
  double c3() const { return c3_; }

 private:
  double c1_;
  double c2_;
  double c3_;
};

/// Principal stretches of an incompressible uniaxial extension: the
/// transverse stretches follow from volume conservation,
/// lambda2 = lambda3 = 1/sqrt(lambda1).
class StretchState {
 public:
  static StretchState uniaxial(double lambda1);

  double lambda1() const { return lambda1_; }
  double lambda2() const { return lambda23_; }
  double lambda3() const { return lambda23_; }

 private:
  explicit StretchState(double lambda1, double lambda23)
      : lambda1_(lambda1), lambda23_(lambda23) {}
  double lambda1_;
  double lambda23_;
};

/// Initial dogbone gauge dimensions in mm.
class SpecimenGeometry {
 public:
  SpecimenGeometry(double l0, double w0, double h0);

  double l0() const { return l0_; }
  double w0() const { return w0_; }
  double h0() const { return h0_; }

  /// Undeformed cross section w0*h0 in mm^2.
  double reference_area() const { return w0_ * h0_; }

 private:
  double l0_;
  double w0_;
  double h0_;
};

/// Engineering-scale material properties derived from fitted constants.
/// Stresses in MPa, elongation at break as percent strain
/// ((lambda_EAB - 1) * 100).
struct MaterialProperties {
  double youngs_modulus;
  double shear_modulus;
  double tensile_strength;
  double elongation_at_break;
  double poisson_ratio;
};

/// First strain invariant I1 = lambda1^2 + lambda2^2 + lambda3^2. For the
/// uniaxial incompressible state this reduces to lambda1^2 + 2/lambda1;
/// it is >= 3 with equality only in the undeformed state.
double strain_invariant(const StretchState& state);

/// Yeoh strain energy density in MPa at uniaxial stretch lambda1.
/// Throws std::domain_error for lambda1 <= 0.
double strain_energy_density(const YeohParameters& params, double lambda1);

/// Cauchy stress in the pulling direction, sigma1 = lambda1 dW/dlambda1
///   = 2 (lambda1^2 - 1/lambda1) sum_i i c_i (I1 - 3)^(i-1)   [MPa].
/// Throws std::domain_error for lambda1 <= 0.
double uniaxial_cauchy_stress(const YeohParameters& params, double lambda1);

/// Uniaxial load on the specimen,
///   F1 = 2 h0 w0 (lambda1 - 1/lambda1^2) sum_i i c_i (I1 - 3)^(i-1),
/// in N (MPa * mm^2). Satisfies F1 = sigma1 * w0 * h0 / lambda1.
double uniaxial_loading(const YeohParameters& params, const SpecimenGeometry& geom,
                        double lambda1);

/// Tensile strength sigma_TS = F1m * lambda_EAB / (w0 h0) where F1m is the
/// measured load at break. Requires load >= 0 and lambda_eab >= 1.
double tensile_strength(double measured_load_at_break, const SpecimenGeometry& geom,
                        double lambda_eab);

/// Derives the engineering properties from fitted constants and the
/// measured break point: mu = 2 c1, E = 2 mu (1 + nu) with nu = 1/2.
MaterialProperties derive_properties(const YeohParameters& params,
                                     const SpecimenGeometry& geom, double lambda_eab,
                                     double measured_load_at_break);

}  // namespace hyperfit
