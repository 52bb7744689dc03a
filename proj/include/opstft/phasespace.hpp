#ifndef OPSTFT_PHASESPACE_HPP_
#define OPSTFT_PHASESPACE_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <variant>

#include "opstft/core.hpp"

namespace opstft::phasespace {

enum class Kind { wigner, kirkwood };

// 2D distribution over one conjugate pair. Wigner-kind values are real up to
// rounding; kirkwood-kind values are genuinely complex.
struct Dist2D {
  SampledAxis axis1;
  SampledAxis axis2;
  CMatrix values;
  Kind kind = Kind::wigner;
};

double realness_ratio(const Dist2D& d);  // max|Im| / max|Re|

// 4D distribution over (x, p, omega, t). Separable storage keeps one complex
// factor per conjugate pair; the combine rule is Re(f_xp * f_wt) for wigner
// kind and the plain complex product for kirkwood kind.
struct Dist4D {
  struct Separable {
    Dist2D factor_xp;  // axes (x, p)
    Dist2D factor_wt;  // axes (omega, t)
  };
  struct Dense {
    std::array<SampledAxis, 4> axes;  // x, p, omega, t
    std::vector<Complex> values;      // index (((ix*np + ip)*nw + iw)*nt + it)
    std::size_t index(int ix, int ip, int iw, int it) const {
      return ((static_cast<std::size_t>(ix) * axes[1].n + ip) * axes[2].n + iw) * axes[3].n + it;
    }
  };

  Kind kind = Kind::wigner;
  std::variant<Separable, Dense> rep;

  bool separable() const { return std::holds_alternative<Separable>(rep); }
  const Separable& sep() const { return std::get<Separable>(rep); }
  const Dense& dense() const { return std::get<Dense>(rep); }
  std::array<SampledAxis, 4> axes() const;
  Complex value(int ix, int ip, int iw, int it) const;
};

struct MemoryBudget {
  std::size_t bytes = std::size_t{512} << 20;  // desk-scale guardrail
};

// --------------------------------------------------------------------------
// distributions
// --------------------------------------------------------------------------

// W(u,k) = (1/2pi) int d.eps e^{i eps k} f*(u+eps/2) f(u-eps/2) on the grid
// (u, conjugate_axis(u)). Half-sample products come from the band-limited
// 2x-refined lattice; the eps window spans one alias-free half period, which
// makes both marginal identities exact on the grid.
Dist2D wigner_1d(const ComplexField1D& f, WarningSink* sink = nullptr);

// Separable 4D Wigner: factor_xp from the spatial factor, factor_wt from the
// spectral factor canonicalized to the frequency domain.
Dist4D wigner_4d(const SeparableField& f, WarningSink* sink = nullptr);

// Dense 4D Wigner of a general (possibly non-separable) E(x, omega).
Dist4D wigner_4d_dense(const ComplexField2D& f, const MemoryBudget& budget = {},
                       WarningSink* sink = nullptr);

// K(x,p,w,t) = E*(x,w) Etilde(p,t) e^{i(xp + wt)} in separable form:
// K_x(x,p) = f*(x) ftilde(p) e^{ixp} / sqrt(2pi), likewise for (w,t), with
// ftilde the sign=-1 transform; then sum_p K_x(x,p) dp = |f(x)|^2 exactly.
Dist4D kirkwood_4d(const SeparableField& f, WarningSink* sink = nullptr);

// Linear inversion back to the Wigner distribution:
//   W(x,p,w,t) = (1/pi^2) Re int e^{-2i[(x-x0)(p-p0)+(w-w0)(t-t0)]} K dV0,
// evaluated per conjugate pair on the alias-free eps window so that
// invert_k_to_w(kirkwood_4d(f)) reproduces wigner_4d(f) to rounding.
Dist4D invert_k_to_w(const Dist4D& k, const MemoryBudget& budget = {});

// --------------------------------------------------------------------------
// reductions
// --------------------------------------------------------------------------

// integrate a wigner-kind Dist4D over (p,t), leaving the (x, omega) intensity
Dist2D marginal_xw(const Dist4D& d);
// integrate over (x, omega), leaving (p, t)
Dist2D marginal_pt(const Dist4D& d);
// integral over all four coordinates
Complex total_integral(const Dist4D& d);

// profile along axis1 after integrating axis2 (and vice versa)
CVector marginal_axis1(const Dist2D& d);
CVector marginal_axis2(const Dist2D& d);

// 2D section with the two fixed coordinates snapped to grid points.
struct SliceSpec {
  std::optional<double> x, p, w, t;  // exactly two must be set
};

struct SliceResult {
  Dist2D dist;                        // free pair in canonical order x<p<w<t
  std::array<const char*, 2> fixed_names;
  std::array<double, 2> requested;
  std::array<double, 2> snapped;
};

SliceResult slice(const Dist4D& d, const SliceSpec& s);

// snapped point evaluation (wigner kind: real part is the value)
Complex value_at(const Dist4D& d, double x, double p, double w, double t);

// relative L2 distance between two 4D distributions on identical axes,
// streamed one (omega, t) plane at a time
double rel_l2(const Dist4D& a, const Dist4D& b);

}  // namespace opstft::phasespace

#endif  // OPSTFT_PHASESPACE_HPP_
