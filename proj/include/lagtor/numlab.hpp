#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "lagtor/errors.hpp"

namespace lagtor {
namespace numlab {

// Action-angle coordinates (rho_1, theta_1, rho_2, theta_2) on R^4 with
// omega = d rho ^ d theta and theta in [0,1), so T(a) is the circle
// rho = a.
struct PsiPoint {
  double rho1, th1, rho2, th2;
};

// (rho1, th1 + th2, rho2 - rho1, th2); domain rho2 > rho1.
PsiPoint map_psi(const PsiPoint& p);
PsiPoint map_psi_inverse(const PsiPoint& p);

// (rho1, th1 + m th2, rho2 + s - m rho1, th2); domain rho2 + s > m rho1.
PsiPoint map_psi_ms(long long m, double s, const PsiPoint& p);

// max |J^T Omega J - Omega| of the central-difference Jacobian (step h).
double psi_symplectic_defect(const PsiPoint& p, double h = 1e-6);
double psi_ms_symplectic_defect(long long m, double s, const PsiPoint& p,
                                double h = 1e-6);

// Samples T(a, c, a+d), applies the unitary rotation interpolating the
// identity to (z1,z2,z3) -> (z3,z2,-z1) in the (z1,z3) plane at time t,
// pulls the result back through the inverse shear, and reports the largest
// pi * sum |z|^2 seen. The bound 4a + c + 2d holds exactly.
double check_step1_ball(double a, double c, double d, double t, int samples,
                        uint64_t seed);

// Area of a complex line through the origin intersected with the
// hyperannulus r_minus < |z| < r_plus, by composite-trapezoid quadrature
// with Richardson doubling. Closed form: pi (r_plus^2 - r_minus^2).
double area_line_annulus(double r_minus, double r_plus);

// Closed C^1 curve in C^n sampled uniformly in parameter, with derivative
// samples. N >= 64 and closure to 1e-12 are required.
struct LoopSample {
  std::vector<std::vector<std::complex<double>>> points;  // [N][n]
  std::vector<std::vector<std::complex<double>>> derivs;  // [N][n]

  static LoopSample circle(double radius, size_t n_samples = 4096);
  static LoopSample random_trig(size_t n_dims, int max_degree, uint64_t seed,
                                size_t n_samples = 4096);
  // E_{t,l}(theta) = (sqrt((1-t)d/pi) e^{2 pi i theta},
  //                   sqrt(t d / (l pi)) e^{2 pi i l theta})
  static LoopSample e_curve(double t, long long l, double d,
                            size_t n_samples = 4096);

  void validate() const;
};

struct IsoperimetricResult {
  double lhs;    // l(gamma)^2
  double rhs;    // 2 pi * integral of gamma^* alpha_n
  double slack;  // lhs - rhs
};

// l^2(gamma) >= 2 pi * int gamma^* alpha_n, alpha_n = sum x dy - y dx.
IsoperimetricResult isoperimetric_check(const LoopSample& loop);

// Integral of gamma^* lambda with lambda = sum x dy (the primitive used in
// the squeezing construction); equals the enclosed-area sum.
double primitive_integral(const LoopSample& loop);

}  // namespace numlab
}  // namespace lagtor
