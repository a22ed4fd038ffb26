#include "lagtor/numlab.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace lagtor {
namespace numlab {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double th) {
  double w = std::fmod(th, 1.0);
  return w < 0 ? w + 1.0 : w;
}

// Unwrapped versions used for differentiation; the maps are smooth on the
// universal cover of the angle coordinates.
std::array<double, 4> psi_raw(const std::array<double, 4>& x) {
  return {x[0], x[1] + x[3], x[2] - x[0], x[3]};
}

std::array<double, 4> psi_ms_raw(long long m, double s,
                                 const std::array<double, 4>& x) {
  return {x[0], x[1] + double(m) * x[3], x[2] + s - double(m) * x[0], x[3]};
}

template <typename F>
double symplectic_defect(F&& f, const std::array<double, 4>& x, double h) {
  double jac[4][4];
  for (int c = 0; c < 4; ++c) {
    std::array<double, 4> xp = x, xm = x;
    xp[c] += h;
    xm[c] -= h;
    auto fp = f(xp), fm = f(xm);
    for (int r = 0; r < 4; ++r) jac[r][c] = (fp[r] - fm[r]) / (2 * h);
  }
  // Omega for coordinates (rho1, th1, rho2, th2)
  double omega[4][4] = {{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1},
                        {0, 0, -1, 0}};
  double worst = 0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      double acc = 0;
      for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t)
          acc += jac[s][r] * omega[s][t] * jac[t][c];
      worst = std::max(worst, std::fabs(acc - omega[r][c]));
    }
  return worst;
}

}  // namespace

PsiPoint map_psi(const PsiPoint& p) {
  if (!(p.rho2 > p.rho1))
    throw DomainViolation("map_psi needs rho2 > rho1");
  if (p.rho1 < 0) throw DomainViolation("action coordinates must be >= 0");
  return {p.rho1, wrap_angle(p.th1 + p.th2), p.rho2 - p.rho1, p.th2};
}

PsiPoint map_psi_inverse(const PsiPoint& p) {
  if (!(p.rho2 > 0)) throw DomainViolation("inverse needs rho2 > 0");
  return {p.rho1, wrap_angle(p.th1 - p.th2), p.rho2 + p.rho1, p.th2};
}

PsiPoint map_psi_ms(long long m, double s, const PsiPoint& p) {
  if (!(p.rho2 + s > double(m) * p.rho1))
    throw DomainViolation("map_psi_ms needs rho2 + s > m rho1");
  return {p.rho1, wrap_angle(p.th1 + double(m) * p.th2),
          p.rho2 + s - double(m) * p.rho1, p.th2};
}

double psi_symplectic_defect(const PsiPoint& p, double h) {
  if (!(p.rho2 > p.rho1 + 2 * h))
    throw DomainViolation("point too close to the domain boundary");
  return symplectic_defect(psi_raw, {p.rho1, p.th1, p.rho2, p.th2}, h);
}

double psi_ms_symplectic_defect(long long m, double s, const PsiPoint& p,
                                double h) {
  if (!(p.rho2 + s > double(m) * p.rho1 + 2 * h * (1 + std::llabs(m))))
    throw DomainViolation("point too close to the domain boundary");
  return symplectic_defect(
      [m, s](const std::array<double, 4>& x) { return psi_ms_raw(m, s, x); },
      {p.rho1, p.th1, p.rho2, p.th2}, h);
}

double check_step1_ball(double a, double c, double d, double t, int samples,
                        uint64_t seed) {
  if (a <= 0 || c <= 0 || d <= 0)
    throw DomainViolation("parameters must be positive");
  if (samples < 1) throw InputError("need at least one sample");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto circle_point = [&](double area) {
    double r = std::sqrt(area / kPi);
    double th = 2 * kPi * unif(rng);
    return std::complex<double>(r * std::cos(th), r * std::sin(th));
  };
  const double angle = t * kPi / 2;
  double worst = 0;
  for (int s = 0; s < samples; ++s) {
    // point on the image torus T(a, c, a+d)
    std::complex<double> z1 = circle_point(a);
    std::complex<double> z2 = circle_point(c);
    std::complex<double> z3 = circle_point(a + d);
    // unitary rotation in the (z1, z3) plane
    std::complex<double> w1 = std::cos(angle) * z1 + std::sin(angle) * z3;
    std::complex<double> w3 = -std::sin(angle) * z1 + std::cos(angle) * z3;
    double rho1 = kPi * std::norm(w1);
    double rho2 = kPi * std::norm(z2);
    double rho3 = kPi * std::norm(w3);
    if (std::fabs(rho2 - c) > 1e-9 || rho2 <= 0)
      throw DomainViolation("flow left the shear domain: pi|z2|^2 != c");
    // pull back through the inverse shear: total becomes
    // rho1 + (rho2 + rho1) + rho3
    double total = 2 * rho1 + rho2 + rho3;
    worst = std::max(worst, total);
  }
  return worst;
}

namespace {

template <typename F>
double trapezoid(F&& f, double lo, double hi, size_t n) {
  double h = (hi - lo) / double(n);
  double acc = 0.5 * (f(lo) + f(hi));
  for (size_t i = 1; i < n; ++i) acc += f(lo + double(i) * h);
  return acc * h;
}

template <typename F>
double richardson(F&& f, double lo, double hi, double tol) {
  size_t n = 64;
  double prev = trapezoid(f, lo, hi, n);
  for (int round = 0; round < 16; ++round) {
    n *= 2;
    double cur = trapezoid(f, lo, hi, n);
    if (std::fabs(cur - prev) <= tol * std::max(1.0, std::fabs(cur)))
      return cur;
    prev = cur;
  }
  throw IterationLimit("quadrature failed to stabilise");
}

}  // namespace

double area_line_annulus(double r_minus, double r_plus) {
  if (r_minus < 0 || !(r_minus < r_plus))
    throw InputError("need 0 <= r_minus < r_plus");
  // Fixed line zeta -> zeta * v in C^2 with |v| = 1; the induced area
  // element in polar coordinates is rho * |v|^2 = rho, integrated
  // numerically rather than assumed.
  const std::complex<double> v1(3.0, 1.0), v2(1.0, -2.0);
  const double vnorm = std::sqrt(std::norm(v1) + std::norm(v2));
  auto embed = [&](double rho, double phi) {
    std::complex<double> zeta = std::polar(rho, phi);
    return std::array<std::complex<double>, 2>{zeta * v1 / vnorm,
                                               zeta * v2 / vnorm};
  };
  auto area_density = [&](double rho) {
    // |d_rho f x d_phi f| computed from finite differences of the embedding
    const double h = 1e-6 * std::max(1.0, rho);
    auto fp = embed(rho + h, 0.3), fm = embed(rho - h, 0.3);
    auto gp = embed(rho, 0.3 + h), gm = embed(rho, 0.3 - h);
    double e = 0, g = 0, fdot = 0;
    for (int j = 0; j < 2; ++j) {
      std::complex<double> dr = (fp[j] - fm[j]) / (2 * h);
      std::complex<double> dphi = (gp[j] - gm[j]) / (2 * h);
      e += std::norm(dr);
      g += std::norm(dphi);
      fdot += dr.real() * dphi.real() + dr.imag() * dphi.imag();
    }
    return std::sqrt(std::max(0.0, e * g - fdot * fdot));
  };
  double radial = richardson(area_density, r_minus, r_plus, 1e-9);
  return 2 * kPi * radial;
}

LoopSample LoopSample::circle(double radius, size_t n_samples) {
  LoopSample s;
  s.points.resize(n_samples + 1);
  s.derivs.resize(n_samples + 1);
  for (size_t i = 0; i <= n_samples; ++i) {
    double th = 2 * kPi * double(i) / double(n_samples);
    s.points[i] = {std::polar(radius, th)};
    s.derivs[i] = {std::complex<double>(-radius * std::sin(th),
                                        radius * std::cos(th)) *
                   (2 * kPi)};
  }
  s.validate();
  return s;
}

LoopSample LoopSample::random_trig(size_t n_dims, int max_degree,
                                   uint64_t seed, size_t n_samples) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  // coefficients for e^{2 pi i k t}, k in [-max_degree, max_degree]
  std::vector<std::vector<std::complex<double>>> coef(n_dims);
  for (size_t j = 0; j < n_dims; ++j)
    for (int k = -max_degree; k <= max_degree; ++k)
      coef[j].push_back({unif(rng), unif(rng)});
  LoopSample s;
  s.points.resize(n_samples + 1);
  s.derivs.resize(n_samples + 1);
  for (size_t i = 0; i <= n_samples; ++i) {
    double t = double(i) / double(n_samples);
    s.points[i].resize(n_dims);
    s.derivs[i].resize(n_dims);
    for (size_t j = 0; j < n_dims; ++j) {
      std::complex<double> p = 0, d = 0;
      int idx = 0;
      for (int k = -max_degree; k <= max_degree; ++k, ++idx) {
        std::complex<double> e =
            std::polar(1.0, 2 * kPi * double(k) * t);
        p += coef[j][idx] * e;
        d += coef[j][idx] * e * std::complex<double>(0, 2 * kPi * double(k));
      }
      s.points[i][j] = p;
      s.derivs[i][j] = d;
    }
  }
  s.validate();
  return s;
}

LoopSample LoopSample::e_curve(double t, long long l, double d,
                               size_t n_samples) {
  if (l < 1 || d <= 0 || t < 0 || t > 1)
    throw InputError("e_curve needs l >= 1, d > 0, t in [0,1]");
  double r1 = std::sqrt((1 - t) * d / kPi);
  double r2 = std::sqrt(t * d / (double(l) * kPi));
  LoopSample s;
  s.points.resize(n_samples + 1);
  s.derivs.resize(n_samples + 1);
  for (size_t i = 0; i <= n_samples; ++i) {
    double th = double(i) / double(n_samples);
    s.points[i] = {std::polar(r1, 2 * kPi * th),
                   std::polar(r2, 2 * kPi * double(l) * th)};
    s.derivs[i] = {
        std::polar(r1, 2 * kPi * th) * std::complex<double>(0, 2 * kPi),
        std::polar(r2, 2 * kPi * double(l) * th) *
            std::complex<double>(0, 2 * kPi * double(l))};
  }
  s.validate();
  return s;
}

void LoopSample::validate() const {
  // points[i] = gamma(i/N) for i = 0..N inclusive, so the closure
  // gamma(0) = gamma(1) is checkable directly.
  if (points.size() < 65)
    throw InputError("loop samples need N >= 64 intervals");
  if (derivs.size() != points.size())
    throw InputError("derivative samples missing");
  const auto& first = points.front();
  const auto& last = points.back();
  if (first.size() != last.size() || first.empty())
    throw InputError("ragged loop sample");
  for (size_t j = 0; j < first.size(); ++j)
    if (std::abs(last[j] - first[j]) > 1e-12)
      throw InputError("loop sample does not close up to 1e-12");
}

namespace {

// Trapezoid over the closed parameter interval [0, 1].
template <typename G>
double loop_quadrature(const LoopSample& loop, G&& integrand) {
  size_t n = loop.points.size() - 1;
  double acc = 0.5 * (integrand(0) + integrand(n));
  for (size_t i = 1; i < n; ++i) acc += integrand(i);
  return acc / double(n);
}

}  // namespace

IsoperimetricResult isoperimetric_check(const LoopSample& loop) {
  loop.validate();
  double len = loop_quadrature(loop, [&](size_t i) {
    double speed2 = 0;
    for (const std::complex<double>& v : loop.derivs[i]) speed2 += std::norm(v);
    return std::sqrt(speed2);
  });
  double action = loop_quadrature(loop, [&](size_t i) {
    double form = 0;
    for (size_t j = 0; j < loop.points[i].size(); ++j) {
      std::complex<double> p = loop.points[i][j], v = loop.derivs[i][j];
      form += p.real() * v.imag() - p.imag() * v.real();  // x y' - y x'
    }
    return form;
  });
  if (len <= 0) throw InputError("degenerate loop of zero length");
  IsoperimetricResult r;
  r.lhs = len * len;
  r.rhs = 2 * kPi * action;
  r.slack = r.lhs - r.rhs;
  return r;
}

double primitive_integral(const LoopSample& loop) {
  loop.validate();
  return loop_quadrature(loop, [&](size_t i) {
    double acc = 0;
    for (size_t j = 0; j < loop.points[i].size(); ++j)
      acc += loop.points[i][j].real() * loop.derivs[i][j].imag();  // x dy
    return acc;
  });
}

}  // namespace numlab
}  // namespace lagtor
