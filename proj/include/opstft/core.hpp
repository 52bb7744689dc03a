#ifndef OPSTFT_CORE_HPP_
#define OPSTFT_CORE_HPP_

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace opstft {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Matrix = Eigen::MatrixXd;

// ---------------------------------------------------------------------------
// errors & warnings
// ---------------------------------------------------------------------------

enum class Errc {
  NonPositiveSpan,
  TooFewSamples,
  AxisMismatch,
  UnitMismatch,
  InconsistentUnits,
  NonFiniteValues,
  BudgetExceeded,
  NotKirkwood,
  NotWigner,
  OutOfRange,
  RegimeViolation,
  ParseError,
  ValidationError,
  IoError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Warning-grade conditions (AliasingRisk, OffsetClipping) never throw; they are
// appended to a caller-provided sink and echoed in run manifests.
struct Warning {
  std::string code;     // "AliasingRisk" | "OffsetClipping"
  std::string message;
};

using WarningSink = std::vector<Warning>;

void warn(WarningSink* sink, const std::string& code, const std::string& message);

// ---------------------------------------------------------------------------
// axes
// ---------------------------------------------------------------------------

// Working units of the simulations: x in mm, p in rad/mm, omega in 1e13 rad/s,
// t in 1e-13 s, so that x*p and omega*t are plain radians.
enum class Unit {
  position_mm,
  momentum_rad_per_mm,
  frequency_1e13_rad_s,
  time_1e_13_s,
};

const char* unit_name(Unit u);
Unit conjugate_unit(Unit u);

// Uniform grid: samples are center - span/2 + k*(span/(n-1)), k = 0..n-1.
struct SampledAxis {
  double center = 0.0;
  double span = 0.0;
  int n = 0;
  Unit unit = Unit::position_mm;

  double step() const { return span / static_cast<double>(n - 1); }
  double lo() const { return center - span / 2.0; }
  double hi() const { return center + span / 2.0; }
  double value(int k) const { return lo() + step() * static_cast<double>(k); }
  Vector values() const;
  // index of the sample nearest to v (clamped to the grid)
  int nearest_index(double v) const;

  bool same_grid(const SampledAxis& o) const {
    return center == o.center && span == o.span && n == o.n;
  }
  bool operator==(const SampledAxis& o) const {
    return same_grid(o) && unit == o.unit;
  }
};

SampledAxis make_axis(double center, double span, int n, Unit unit);

// DFT-conjugate grid of a: step 2*pi/(n*dx), n samples, centered at zero,
// partner unit. conjugate_axis(conjugate_axis(a)) restores (step, n).
SampledAxis conjugate_axis(const SampledAxis& a);

// ---------------------------------------------------------------------------
// fields
// ---------------------------------------------------------------------------

struct ComplexField1D {
  SampledAxis axis;
  CVector values;
};

ComplexField1D make_field(const SampledAxis& axis, CVector values);

enum class Domain { x_t, x_omega, p_t, p_omega };

const char* domain_name(Domain d);
Domain domain_from_units(Unit u1, Unit u2);

struct ComplexField2D {
  SampledAxis axis1;  // spatial-like (x or p)
  SampledAxis axis2;  // spectral-like (omega or t)
  CMatrix values;     // (axis1.n, axis2.n)
  Domain domain = Domain::x_omega;
};

ComplexField2D make_field2d(const SampledAxis& a1, const SampledAxis& a2, CMatrix values);

struct SeparableField {
  ComplexField1D spatial;   // x or p axis
  ComplexField1D spectral;  // omega or t axis
};

// outer product spatial (x) spectral, entrywise exact
ComplexField2D densify(const SeparableField& s);

// ---------------------------------------------------------------------------
// norms, inner products, diagnostics
// ---------------------------------------------------------------------------

double l2_norm(const ComplexField1D& f);   // sqrt(sum |f|^2 dx)
double l2_norm(const ComplexField2D& f);

// sum conj(f).g * d1*d2  (Riemann approximation of the continuum overlap)
Complex inner_product(const ComplexField2D& f, const ComplexField2D& g);
Complex inner_product(const ComplexField1D& f, const ComplexField1D& g);

// fraction of |f|^2 within two samples of either end
double edge_energy_ratio(const CVector& v);
void check_aliasing(const ComplexField1D& f, WarningSink* sink, const char* who);
void check_aliasing(const ComplexField2D& f, WarningSink* sink, const char* who);

// ---------------------------------------------------------------------------
// continuum-scaled DFT machinery
// ---------------------------------------------------------------------------
// Convention: F(k) = (1/sqrt(2*pi)) * sum_x f(x) e^{sign*i*k*x} dx on a
// centered conjugate grid. With k = conjugate_axis(x) the map is exactly
// unitary and fourier_1d(fourier_1d(f,-1),+1) = f to rounding.

// matrix of (dx/sqrt(2*pi)) e^{sign*i*k_m*x_j}, shape (k.n, x.n)
CMatrix dft_matrix(const SampledAxis& x, const SampledAxis& k, int sign);

ComplexField1D fourier_1d(const ComplexField1D& f, int sign, WarningSink* sink = nullptr);
// same transform evaluated on an arbitrary caller-chosen output grid
ComplexField1D fourier_1d_to(const ComplexField1D& f, int sign, const SampledAxis& out,
                             WarningSink* sink = nullptr);

// Band-limited interpolant of f sampled on the half-step lattice
// x0 + j*dx/2, j = 0..2n-1 (one full period of the trigonometric interpolant).
// For even n the interpolant is anti-periodic under a shift by n*dx; wrap_sign
// gives the sign picked up per period crossing.
CVector refine_half_lattice(const ComplexField1D& f);
inline double wrap_sign(long period_crossings, int n) {
  if (n % 2 == 1) return 1.0;
  return (period_crossings % 2 == 0) ? 1.0 : -1.0;
}

// band-limited translation: (shift_matrix(x,delta) * f)(x) = f(x - delta)
CMatrix shift_matrix(const SampledAxis& x, double delta);
ComplexField1D shift_field(const ComplexField1D& f, double delta);

}  // namespace opstft

#endif  // OPSTFT_CORE_HPP_
