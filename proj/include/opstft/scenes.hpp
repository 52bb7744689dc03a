#ifndef OPSTFT_SCENES_HPP_
#define OPSTFT_SCENES_HPP_

#include "opstft/core.hpp"

namespace opstft::scenes {

// Chirped Gaussian beam. The second factor lives either in time,
// exp(-t^2/(2 sigma2^2)), or in frequency, exp(-(w-omega0)^2/(2 sigma2^2)).
// chirp is the quadratic-phase coefficient in rad/mm^2 (k/2R for wavefront
// curvature R); the scenario default corresponds to an 800 nm carrier.
struct GaussianBeamSpec {
  double sigma_x = 0.85;       // mm
  double sigma_2 = 2.0;        // 1e-13 s or 1e13 rad/s
  double chirp = 0.0;          // rad/mm^2
  double omega0 = 0.0;         // 1e13 rad/s
  enum class SecondDomain { time, frequency } second_domain = SecondDomain::time;
};

// Hard-edged stop band [lo, hi] on the position or frequency factor,
// matching the If[lo <= u <= hi, 0, 1] masks of the simulated scenarios.
struct MaskSpec {
  double lo = 0.0;
  double hi = 0.0;
  enum class AxisRole { position, frequency } axis_role = AxisRole::position;
};

// Two-component local oscillator: focused broadband + collimated narrowband.
struct LOSpec {
  double a = 0.05;      // mm, focused spatial width
  double A = 1.0;       // mm, collimated spatial width
  double alpha = 2.0;   // 1e13 rad/s, broad bandwidth (focused component)
  double beta = 0.05;   // 1e13 rad/s, narrow bandwidth (collimated component)
  double gamma = 1.0;   // relative amplitude of the collimated component
  double phi = 0.0;     // rad, relative phase
};

// true when the widths satisfy the separated-scale regime A/a >= 10, alpha/beta >= 10
bool in_approximation_regime(const LOSpec& spec);

// Unit-normalized separable beam; factor 1 on ax1 (position), factor 2 on ax2.
SeparableField build_beam(const GaussianBeamSpec& spec, const SampledAxis& ax1,
                          const SampledAxis& ax2);

// Multiplies the matching factor by 0 inside [lo, hi] (1 outside). With
// inverted=true the mask passes [lo, hi] and blocks outside. No renormalization.
SeparableField apply_mask(const SeparableField& f, const MaskSpec& m, bool inverted = false);

// E_LO(x,w) = exp(-x^2/2a^2)exp(-w^2/2alpha^2)
//           + gamma * exp(-x^2/2A^2)exp(-w^2/2beta^2) e^{i phi}, unit-normalized.
// The two-term sum is not separable, so the result is dense.
ComplexField2D build_lo(const LOSpec& spec, const SampledAxis& x_axis, const SampledAxis& w_axis);

// The two LO components as separable fields (focused, collimated); the
// collimated one carries gamma*e^{i phi}. Their densified sum is build_lo
// before normalization.
std::pair<SeparableField, SeparableField> lo_components(const LOSpec& spec,
                                                        const SampledAxis& x_axis,
                                                        const SampledAxis& w_axis);

}  // namespace opstft::scenes

#endif  // OPSTFT_SCENES_HPP_
