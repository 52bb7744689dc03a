#ifndef OPSTFT_HETERODYNE_HPP_
#define OPSTFT_HETERODYNE_HPP_

#include "opstft/core.hpp"
#include "opstft/phasespace.hpp"
#include "opstft/scenes.hpp"

namespace opstft::heterodyne {

using phasespace::Dist4D;

// Scan offsets. dp_axis carries the momentum offset k*d_p/f directly
// (rad/mm); f_over_k = f/k converts it to the physical lens translation.
struct ScanGrid {
  SampledAxis dx_axis;   // position_mm
  SampledAxis dp_axis;   // momentum_rad_per_mm
  SampledAxis dw_axis;   // frequency_1e13_rad_s
  SampledAxis tau_axis;  // time_1e-13_s
  double f_over_k = 1.0;
};

void validate(const ScanGrid& g);

// In- and out-of-phase quadratures S_R, S_I of the focused x collimated
// lock-in product at every scan point.
struct MeasurementScan {
  ScanGrid grid;
  std::vector<double> s_real;
  std::vector<double> s_imag;
  std::size_t index(int a, int b, int c, int e) const {
    return ((static_cast<std::size_t>(a) * grid.dp_axis.n + b) * grid.dw_axis.n + c) *
               grid.tau_axis.n + e;
  }
  Complex at(int a, int b, int c, int e) const {
    const std::size_t i = index(a, b, c, e);
    return {s_real[i], s_imag[i]};
  }
};

// V_B = int dx dw E_LO*(x-dx, w-dw) E_S(x,w) e^{-i x dp/f_over_k} e^{-i w tau},
// with the LO translated band-limitedly. dp is the lens translation in mm.
Complex beat_amplitude(const ComplexField2D& lo, const ComplexField2D& sig, double dx, double dw,
                       double dp, double tau, double f_over_k, WarningSink* sink = nullptr);

struct ScanPoint {
  double dx = 0.0;   // mm
  double dp = 0.0;   // lens translation, mm
  double dw = 0.0;   // 1e13 rad/s
  double tau = 0.0;  // 1e-13 s
};

// |V_B|^2 = (2pi)^2 int W_LO(x-dx, p-dp/f_over_k, w-dw, t-tau) W_S dV by
// shifted Riemann sum. The p shift direction and the (2pi)^2 constant are
// fixed by requiring equality with |beat_amplitude|^2.
double mean_square_beat_conv(const Dist4D& lo_w, const Dist4D& sig_w, const ScanPoint& point,
                             double f_over_k, WarningSink* sink = nullptr);

enum class KernelForm {
  envelope,      // exp(-2x^2/A^2 - 2a^2 p^2 - 2w^2/alpha^2 - 2 beta^2 t^2) modulated
  regime_limit,  // bare cos kernel, meaningful where the envelope exceeds 0.99
};

// Phase-sensitive part of the two-component LO Wigner function,
// env * cos(2wt - 2xp + phi); the mixed-sign orientation is the one the dense
// LO Wigner actually produces (focused component conjugated). Unit peak.
Dist4D lo_wigner_approx(const scenes::LOSpec& spec, const SampledAxis& x_axis,
                        const SampledAxis& p_axis, const SampledAxis& w_axis,
                        const SampledAxis& t_axis, KernelForm form = KernelForm::envelope);

// Same kernel with the scan offsets baked into the arguments,
// env((x-dx), (p-p_off), ...) * cos(2(w-dw)(t-tau) - 2(x-dx)(p-p_off) + phi).
Dist4D lo_wigner_approx_at(const scenes::LOSpec& spec, const SampledAxis& x_axis,
                           const SampledAxis& p_axis, const SampledAxis& w_axis,
                           const SampledAxis& t_axis, const ScanPoint& point, double f_over_k,
                           KernelForm form = KernelForm::envelope);

// Four-window scan: at each grid point forms V_focused^* . V_collimated, the
// kHz-beat product the lock-in electronics isolate. The path delay is applied
// to the LO arm (phase e^{+i w tau}), which orients the quadratures so that
// S_R + i S_I equals the kirkwood_4d convention for fields with real spectral
// factors. Output is normalized to unit maximum modulus unless disabled.
MeasurementScan run_scan(const SeparableField& lo_focused, const SeparableField& lo_collimated,
                         const SeparableField& sig, const ScanGrid& grid, bool normalize = true,
                         WarningSink* sink = nullptr);

// General dense-field variant (per-point evaluation; intended for plane scans)
MeasurementScan run_scan(const ComplexField2D& lo_focused, const ComplexField2D& lo_collimated,
                         const ComplexField2D& sig, const ScanGrid& grid, bool normalize = true,
                         WarningSink* sink = nullptr);

// Convenience: ideal four-window limit components on the given axes
// (focused -> grid delta (x) flat, collimated -> flat (x) grid delta).
std::pair<SeparableField, SeparableField> ideal_lo_components(const SampledAxis& x_axis,
                                                              const SampledAxis& w_axis);

// Reinterpret a scan as a dense kirkwood-kind distribution on the scan grid.
Dist4D scan_to_kirkwood(const MeasurementScan& scan);

}  // namespace opstft::heterodyne

#endif  // OPSTFT_HETERODYNE_HPP_
