#include "opstft/scenes.hpp"

#include <cmath>

namespace opstft::scenes {

bool in_approximation_regime(const LOSpec& spec) {
  return spec.A / spec.a >= 10.0 && spec.alpha / spec.beta >= 10.0;
}

namespace {

void normalize(CVector& v, double step) {
  const double nrm = std::sqrt(v.squaredNorm() * step);
  if (nrm > 0.0) v /= nrm;
}

}  // namespace

SeparableField build_beam(const GaussianBeamSpec& spec, const SampledAxis& ax1,
                          const SampledAxis& ax2) {
  if (!(spec.sigma_x > 0.0) || !(spec.sigma_2 > 0.0))
    throw Error(Errc::ValidationError, "beam widths must be positive");
  if (ax1.unit != Unit::position_mm)
    throw Error(Errc::UnitMismatch, "build_beam: ax1 must be a position axis");
  const Unit want = spec.second_domain == GaussianBeamSpec::SecondDomain::time
                        ? Unit::time_1e_13_s
                        : Unit::frequency_1e13_rad_s;
  if (ax2.unit != want)
    throw Error(Errc::UnitMismatch, "build_beam: ax2 unit does not match second_domain");

  CVector s(ax1.n);
  for (int i = 0; i < ax1.n; ++i) {
    const double x = ax1.value(i);
    s[i] = std::exp(-x * x / (2.0 * spec.sigma_x * spec.sigma_x)) *
           std::polar(1.0, spec.chirp * x * x);
  }
  CVector t(ax2.n);
  for (int j = 0; j < ax2.n; ++j) {
    const double u = ax2.value(j);
    if (spec.second_domain == GaussianBeamSpec::SecondDomain::time) {
      // constant carrier phase e^{i omega0 t0} dropped as a global phase
      t[j] = std::exp(-u * u / (2.0 * spec.sigma_2 * spec.sigma_2));
    } else {
      const double d = u - spec.omega0;
      t[j] = std::exp(-d * d / (2.0 * spec.sigma_2 * spec.sigma_2));
    }
  }
  normalize(s, ax1.step());
  normalize(t, ax2.step());
  return SeparableField{ComplexField1D{ax1, std::move(s)}, ComplexField1D{ax2, std::move(t)}};
}

SeparableField apply_mask(const SeparableField& f, const MaskSpec& m, bool inverted) {
  if (!(m.lo < m.hi)) throw Error(Errc::ValidationError, "mask needs lo < hi");
  SeparableField out = f;
  ComplexField1D* target = nullptr;
  if (m.axis_role == MaskSpec::AxisRole::position) {
    if (f.spatial.axis.unit != Unit::position_mm)
      throw Error(Errc::UnitMismatch, "position mask needs a position-domain spatial factor");
    target = &out.spatial;
  } else {
    if (f.spectral.axis.unit != Unit::frequency_1e13_rad_s)
      throw Error(Errc::UnitMismatch, "frequency mask needs a frequency-domain spectral factor");
    target = &out.spectral;
  }
  for (int i = 0; i < target->axis.n; ++i) {
    const double u = target->axis.value(i);
    const bool inside = (u >= m.lo && u <= m.hi);
    if (inside != inverted) target->values[i] = Complex(0.0, 0.0);
  }
  return out;
}

std::pair<SeparableField, SeparableField> lo_components(const LOSpec& spec,
                                                        const SampledAxis& x_axis,
                                                        const SampledAxis& w_axis) {
  if (x_axis.unit != Unit::position_mm || w_axis.unit != Unit::frequency_1e13_rad_s)
    throw Error(Errc::UnitMismatch, "LO axes must be position and frequency");
  if (!(spec.a > 0.0 && spec.A > 0.0 && spec.alpha > 0.0 && spec.beta > 0.0))
    throw Error(Errc::ValidationError, "LO widths must be positive");
  if (spec.gamma < 0.0) throw Error(Errc::ValidationError, "LO gamma must be >= 0");

  auto gauss = [](const SampledAxis& ax, double width) {
    CVector v(ax.n);
    for (int i = 0; i < ax.n; ++i) {
      const double u = ax.value(i);
      v[i] = std::exp(-u * u / (2.0 * width * width));
    }
    return v;
  };
  SeparableField focused{ComplexField1D{x_axis, gauss(x_axis, spec.a)},
                         ComplexField1D{w_axis, gauss(w_axis, spec.alpha)}};
  CVector cx = gauss(x_axis, spec.A);
  CVector cw = gauss(w_axis, spec.beta) * (spec.gamma * std::polar(1.0, spec.phi));
  SeparableField collimated{ComplexField1D{x_axis, std::move(cx)},
                            ComplexField1D{w_axis, std::move(cw)}};
  return {std::move(focused), std::move(collimated)};
}

ComplexField2D build_lo(const LOSpec& spec, const SampledAxis& x_axis, const SampledAxis& w_axis) {
  auto [focused, collimated] = lo_components(spec, x_axis, w_axis);
  CMatrix v = focused.spatial.values * focused.spectral.values.transpose() +
              collimated.spatial.values * collimated.spectral.values.transpose();
  const double nrm = std::sqrt(v.squaredNorm() * x_axis.step() * w_axis.step());
  if (nrm > 0.0) v /= nrm;
  return make_field2d(x_axis, w_axis, std::move(v));
}

}  // namespace opstft::scenes
