#include "opstft/core.hpp"

#include <cmath>
#include <numbers>

namespace opstft {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEdgeEnergyThreshold = 1e-6;
}  // namespace

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonPositiveSpan: return "NonPositiveSpan";
    case Errc::TooFewSamples: return "TooFewSamples";
    case Errc::AxisMismatch: return "AxisMismatch";
    case Errc::UnitMismatch: return "UnitMismatch";
    case Errc::InconsistentUnits: return "InconsistentUnits";
    case Errc::NonFiniteValues: return "NonFiniteValues";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NotKirkwood: return "NotKirkwood";
    case Errc::NotWigner: return "NotWigner";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::RegimeViolation: return "RegimeViolation";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::IoError: return "IoError";
  }
  return "Error";
}

void warn(WarningSink* sink, const std::string& code, const std::string& message) {
  if (sink != nullptr) sink->push_back({code, message});
}

const char* unit_name(Unit u) {
  switch (u) {
    case Unit::position_mm: return "position_mm";
    case Unit::momentum_rad_per_mm: return "momentum_rad_per_mm";
    case Unit::frequency_1e13_rad_s: return "frequency_1e13_rad_s";
    case Unit::time_1e_13_s: return "time_1e-13_s";
  }
  return "unit";
}

Unit conjugate_unit(Unit u) {
  switch (u) {
    case Unit::position_mm: return Unit::momentum_rad_per_mm;
    case Unit::momentum_rad_per_mm: return Unit::position_mm;
    case Unit::frequency_1e13_rad_s: return Unit::time_1e_13_s;
    case Unit::time_1e_13_s: return Unit::frequency_1e13_rad_s;
  }
  return u;
}

Vector SampledAxis::values() const {
  Vector v(n);
  for (int k = 0; k < n; ++k) v[k] = value(k);
  return v;
}

int SampledAxis::nearest_index(double v) const {
  const double fk = (v - lo()) / step();
  long k = std::lround(fk);
  if (k < 0) k = 0;
  if (k > n - 1) k = n - 1;
  return static_cast<int>(k);
}

SampledAxis make_axis(double center, double span, int n, Unit unit) {
  if (!(span > 0.0)) throw Error(Errc::NonPositiveSpan, "axis span must be > 0");
  if (n < 2) throw Error(Errc::TooFewSamples, "axis needs at least 2 samples");
  return SampledAxis{center, span, n, unit};
}

SampledAxis conjugate_axis(const SampledAxis& a) {
  const double dk = kTwoPi / (static_cast<double>(a.n) * a.step());
  return SampledAxis{0.0, dk * static_cast<double>(a.n - 1), a.n, conjugate_unit(a.unit)};
}

ComplexField1D make_field(const SampledAxis& axis, CVector values) {
  if (values.size() != axis.n)
    throw Error(Errc::AxisMismatch, "value count does not match axis sample count");
  if (!values.allFinite()) throw Error(Errc::NonFiniteValues, "field has non-finite entries");
  return ComplexField1D{axis, std::move(values)};
}

const char* domain_name(Domain d) {
  switch (d) {
    case Domain::x_t: return "x_t";
    case Domain::x_omega: return "x_omega";
    case Domain::p_t: return "p_t";
    case Domain::p_omega: return "p_omega";
  }
  return "domain";
}

Domain domain_from_units(Unit u1, Unit u2) {
  const bool spatial_x = (u1 == Unit::position_mm);
  const bool spatial_p = (u1 == Unit::momentum_rad_per_mm);
  const bool spectral_w = (u2 == Unit::frequency_1e13_rad_s);
  const bool spectral_t = (u2 == Unit::time_1e_13_s);
  if (!(spatial_x || spatial_p) || !(spectral_w || spectral_t))
    throw Error(Errc::InconsistentUnits,
                std::string("cannot form a 2D domain from ") + unit_name(u1) + " and " + unit_name(u2));
  if (spatial_x) return spectral_t ? Domain::x_t : Domain::x_omega;
  return spectral_t ? Domain::p_t : Domain::p_omega;
}

ComplexField2D make_field2d(const SampledAxis& a1, const SampledAxis& a2, CMatrix values) {
  if (values.rows() != a1.n || values.cols() != a2.n)
    throw Error(Errc::AxisMismatch, "2D value shape does not match axes");
  if (!values.allFinite()) throw Error(Errc::NonFiniteValues, "field has non-finite entries");
  return ComplexField2D{a1, a2, std::move(values), domain_from_units(a1.unit, a2.unit)};
}

ComplexField2D densify(const SeparableField& s) {
  CMatrix v = s.spatial.values * s.spectral.values.transpose();
  return make_field2d(s.spatial.axis, s.spectral.axis, std::move(v));
}

double l2_norm(const ComplexField1D& f) {
  return std::sqrt(f.values.squaredNorm() * f.axis.step());
}

double l2_norm(const ComplexField2D& f) {
  return std::sqrt(f.values.squaredNorm() * f.axis1.step() * f.axis2.step());
}

Complex inner_product(const ComplexField1D& f, const ComplexField1D& g) {
  if (!(f.axis == g.axis)) throw Error(Errc::AxisMismatch, "inner_product needs a shared axis");
  return f.values.dot(g.values) * f.axis.step();  // Eigen dot conjugates the left factor
}

Complex inner_product(const ComplexField2D& f, const ComplexField2D& g) {
  if (!(f.axis1 == g.axis1) || !(f.axis2 == g.axis2))
    throw Error(Errc::AxisMismatch, "inner_product needs shared axes");
  return (f.values.conjugate().cwiseProduct(g.values)).sum() * f.axis1.step() * f.axis2.step();
}

double edge_energy_ratio(const CVector& v) {
  const auto n = v.size();
  const double total = v.squaredNorm();
  if (total == 0.0) return 0.0;
  const int m = n >= 4 ? 2 : 1;
  double edge = v.head(m).squaredNorm() + v.tail(m).squaredNorm();
  return edge / total;
}

void check_aliasing(const ComplexField1D& f, WarningSink* sink, const char* who) {
  const double r = edge_energy_ratio(f.values);
  if (r > kEdgeEnergyThreshold)
    warn(sink, "AliasingRisk",
         std::string(who) + ": edge energy ratio " + std::to_string(r) +
             " exceeds 1e-6; field may be under-sampled or under-spanned");
}

void check_aliasing(const ComplexField2D& f, WarningSink* sink, const char* who) {
  CVector row_energy(f.values.rows()), col_energy(f.values.cols());
  for (Eigen::Index i = 0; i < f.values.rows(); ++i) row_energy[i] = f.values.row(i).norm();
  for (Eigen::Index j = 0; j < f.values.cols(); ++j) col_energy[j] = f.values.col(j).norm();
  const double r1 = edge_energy_ratio(row_energy);
  const double r2 = edge_energy_ratio(col_energy);
  const double r = std::max(r1, r2);
  if (r > kEdgeEnergyThreshold)
    warn(sink, "AliasingRisk",
         std::string(who) + ": edge energy ratio " + std::to_string(r) + " exceeds 1e-6");
}

CMatrix dft_matrix(const SampledAxis& x, const SampledAxis& k, int sign) {
  const double scale = x.step() / std::sqrt(kTwoPi);
  const double s = sign >= 0 ? 1.0 : -1.0;
  CMatrix m(k.n, x.n);
  for (int a = 0; a < k.n; ++a) {
    const double kv = k.value(a);
    for (int b = 0; b < x.n; ++b)
      m(a, b) = scale * std::polar(1.0, s * kv * x.value(b));
  }
  return m;
}

ComplexField1D fourier_1d(const ComplexField1D& f, int sign, WarningSink* sink) {
  return fourier_1d_to(f, sign, conjugate_axis(f.axis), sink);
}

ComplexField1D fourier_1d_to(const ComplexField1D& f, int sign, const SampledAxis& out,
                             WarningSink* sink) {
  check_aliasing(f, sink, "fourier_1d");
  CVector v = dft_matrix(f.axis, out, sign) * f.values;
  return ComplexField1D{out, std::move(v)};
}

CVector refine_half_lattice(const ComplexField1D& f) {
  const SampledAxis k = conjugate_axis(f.axis);
  const int n = f.axis.n;
  const double dh = f.axis.step() / 2.0;
  CVector spec = dft_matrix(f.axis, k, -1) * f.values;
  const double scale = k.step() / std::sqrt(kTwoPi);
  CVector out(2 * n);
  for (int r = 0; r < 2 * n; ++r) {
    const double xr = f.axis.lo() + dh * static_cast<double>(r);
    Complex acc(0.0, 0.0);
    for (int m = 0; m < n; ++m) acc += spec[m] * std::polar(1.0, k.value(m) * xr);
    out[r] = scale * acc;
  }
  return out;
}

CMatrix shift_matrix(const SampledAxis& x, double delta) {
  const SampledAxis k = conjugate_axis(x);
  CMatrix fwd = dft_matrix(x, k, -1);
  CVector ramp(k.n);
  for (int m = 0; m < k.n; ++m) ramp[m] = std::polar(1.0, -k.value(m) * delta);
  const double scale = k.step() / std::sqrt(kTwoPi);
  CMatrix inv(x.n, k.n);
  for (int a = 0; a < x.n; ++a)
    for (int m = 0; m < k.n; ++m)
      inv(a, m) = scale * std::polar(1.0, k.value(m) * x.value(a));
  return inv * ramp.asDiagonal() * fwd;
}

ComplexField1D shift_field(const ComplexField1D& f, double delta) {
  CVector v = shift_matrix(f.axis, delta) * f.values;
  return ComplexField1D{f.axis, std::move(v)};
}

}  // namespace opstft
