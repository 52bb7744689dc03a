#include "opstft/phasespace.hpp"

#include <cmath>
#include <numbers>

namespace opstft::phasespace {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;

// Symmetric eps window j*dx, one alias-free half period. For even n the ends
// j = +-n/2 are Hermitian partners and carry trapezoidal half weights; this
// keeps the output exactly real and both marginal identities exact.
struct EpsLattice {
  std::vector<int> js;
  Vector w;
};

EpsLattice eps_lattice(int n) {
  EpsLattice e;
  const int half = n / 2;
  if (n % 2 == 0) {
    for (int j = -half; j <= half; ++j) e.js.push_back(j);
    e.w = Vector::Ones(static_cast<Eigen::Index>(e.js.size()));
    e.w[0] = 0.5;
    e.w[e.w.size() - 1] = 0.5;
  } else {
    for (int j = -half; j <= half; ++j) e.js.push_back(j);
    e.w = Vector::Ones(static_cast<Eigen::Index>(e.js.size()));
  }
  return e;
}

// half-lattice index wrapped into [0, 2n) with the interpolant's
// (anti-)periodic sign
struct Wrapped {
  int idx;
  double sign;
};

Wrapped wrap_half(int r, int n) {
  const int m = 2 * n;
  long q = r >= 0 ? r / m : (r - (m - 1)) / m;
  const int rr = r - static_cast<int>(q) * m;
  return {rr, wrap_sign(q, n)};
}

// (2n x n) matrix taking samples to the band-limited interpolant on the
// half-step lattice
CMatrix refine_matrix(const SampledAxis& x) {
  const SampledAxis k = conjugate_axis(x);
  const CMatrix fwd = dft_matrix(x, k, -1);
  const double scale = k.step() / std::sqrt(kTwoPi);
  const double dh = x.step() / 2.0;
  CMatrix inv(2 * x.n, k.n);
  for (int r = 0; r < 2 * x.n; ++r) {
    const double xr = x.lo() + dh * static_cast<double>(r);
    for (int m = 0; m < k.n; ++m) inv(r, m) = scale * std::polar(1.0, k.value(m) * xr);
  }
  return inv * fwd;
}

// e^{i eps_j k_m} with the trapezoid weights folded in, shape (nj, k.n)
CMatrix eps_kernel(const EpsLattice& e, double dx, const SampledAxis& k) {
  CMatrix E(static_cast<Eigen::Index>(e.js.size()), k.n);
  for (std::size_t j = 0; j < e.js.size(); ++j) {
    const double eps = e.js[j] * dx;
    for (int m = 0; m < k.n; ++m)
      E(static_cast<Eigen::Index>(j), m) = e.w[static_cast<Eigen::Index>(j)] *
                                           std::polar(1.0, eps * k.value(m));
  }
  return E;
}

ComplexField1D to_position_domain(const ComplexField1D& f) {
  if (f.axis.unit == Unit::position_mm) return f;
  if (f.axis.unit == Unit::momentum_rad_per_mm) return fourier_1d(f, +1);
  throw Error(Errc::UnitMismatch, "spatial factor must live on a position or momentum axis");
}

ComplexField1D to_frequency_domain(const ComplexField1D& f) {
  if (f.axis.unit == Unit::frequency_1e13_rad_s) return f;
  // time-domain h relates to the frequency factor by h = F_-[g]
  if (f.axis.unit == Unit::time_1e_13_s) return fourier_1d(f, +1);
  throw Error(Errc::UnitMismatch, "spectral factor must live on a frequency or time axis");
}

void require_conjugate_pair(const SampledAxis& u, const SampledAxis& k, const char* who) {
  const SampledAxis want = conjugate_axis(u);
  const bool ok = k.n == want.n && std::abs(k.step() - want.step()) <= 1e-12 * want.step() &&
                  std::abs(k.center) <= 1e-9 * want.step();
  if (!ok)
    throw Error(Errc::AxisMismatch,
                std::string(who) + ": second axis must be the DFT-conjugate grid of the first");
}

Dist2D kirkwood_pair(const ComplexField1D& u, WarningSink* sink) {
  const SampledAxis kap = conjugate_axis(u.axis);
  const ComplexField1D ut = fourier_1d(u, -1, sink);
  CMatrix K(u.axis.n, kap.n);
  for (int i = 0; i < u.axis.n; ++i) {
    const Complex ci = std::conj(u.values[i]);
    const double xi = u.axis.value(i);
    for (int m = 0; m < kap.n; ++m)
      K(i, m) = ci * ut.values[m] * std::polar(kInvSqrt2Pi, xi * kap.value(m));
  }
  return Dist2D{u.axis, kap, std::move(K), Kind::kirkwood};
}

// One conjugate-pair inversion on raw values; axes (u, conj(u)).
// Evaluates (1/pi) sum e^{-2i(x-x0)(p-p0)} K(x0,p0) dx0 dp0 with x0 on the
// refined half lattice restricted to the same eps window as wigner_1d, so the
// kirkwood->wigner round trip closes to rounding.
CMatrix invert_pair_impl(const CMatrix& Kv, const SampledAxis& u, const SampledAxis& kap) {
  require_conjugate_pair(u, kap, "invert_k_to_w");
  const int n = u.n;
  const double d = u.step();
  const double dk = kap.step();

  // demodulate the e^{i x0 p0} ramp so the x0 columns are band-limited
  CMatrix G(n, n);
  for (int i = 0; i < n; ++i)
    for (int m = 0; m < n; ++m)
      G(i, m) = Kv(i, m) * std::polar(1.0, -u.value(i) * kap.value(m));

  const CMatrix G2 = refine_matrix(u) * G;  // (2n, n)

  // Q(r,s) = sum_m G2(r,m) e^{i k_m x_s} dk  -- p0 summed against the
  // interpolant kernel at half-lattice points x_s
  const double dh = d / 2.0;
  CMatrix Es(n, 2 * n);
  for (int m = 0; m < n; ++m)
    for (int s = 0; s < 2 * n; ++s)
      Es(m, s) = dk * std::polar(1.0, kap.value(m) * (u.lo() + dh * s));
  const CMatrix Q = G2 * Es;  // (2n, 2n)

  const EpsLattice e = eps_lattice(n);
  const auto nj = static_cast<Eigen::Index>(e.js.size());
  CMatrix C(n, nj);
  for (int a = 0; a < n; ++a)
    for (Eigen::Index j = 0; j < nj; ++j) {
      const Wrapped r = wrap_half(2 * a + e.js[static_cast<std::size_t>(j)], n);
      const Wrapped s = wrap_half(2 * a - e.js[static_cast<std::size_t>(j)], n);
      C(a, j) = r.sign * s.sign * Q(r.idx, s.idx);
    }
  const CMatrix E = eps_kernel(e, d, kap);
  return (d / kTwoPi) * (C * E);
}

CMatrix dist_plane(const Dist4D& d, int iw, int it) {
  const auto ax = d.axes();
  if (d.separable()) {
    const auto& s = d.sep();
    const Complex c2 = s.factor_wt.values(iw, it);
    CMatrix plane = s.factor_xp.values * c2;
    if (d.kind == Kind::wigner) plane = plane.real().cast<Complex>();
    return plane;
  }
  const auto& dn = d.dense();
  CMatrix plane(ax[0].n, ax[1].n);
  for (int ix = 0; ix < ax[0].n; ++ix)
    for (int ip = 0; ip < ax[1].n; ++ip) plane(ix, ip) = dn.values[dn.index(ix, ip, iw, it)];
  return plane;
}

}  // namespace

double realness_ratio(const Dist2D& d) {
  const double re = d.values.real().cwiseAbs().maxCoeff();
  const double im = d.values.imag().cwiseAbs().maxCoeff();
  return re > 0.0 ? im / re : im;
}

std::array<SampledAxis, 4> Dist4D::axes() const {
  if (separable()) {
    const auto& s = sep();
    return {s.factor_xp.axis1, s.factor_xp.axis2, s.factor_wt.axis1, s.factor_wt.axis2};
  }
  return dense().axes;
}

Complex Dist4D::value(int ix, int ip, int iw, int it) const {
  if (separable()) {
    const auto& s = sep();
    const Complex prod = s.factor_xp.values(ix, ip) * s.factor_wt.values(iw, it);
    return kind == Kind::wigner ? Complex(prod.real(), 0.0) : prod;
  }
  return dense().values[dense().index(ix, ip, iw, it)];
}

Dist2D wigner_1d(const ComplexField1D& f, WarningSink* sink) {
  check_aliasing(f, sink, "wigner_1d");
  const int n = f.axis.n;
  const double d = f.axis.step();
  const SampledAxis kax = conjugate_axis(f.axis);
  const CVector f2 = refine_half_lattice(f);
  const EpsLattice e = eps_lattice(n);
  const auto nj = static_cast<Eigen::Index>(e.js.size());
  CMatrix C(n, nj);
  for (int a = 0; a < n; ++a)
    for (Eigen::Index j = 0; j < nj; ++j) {
      const Wrapped r = wrap_half(2 * a + e.js[static_cast<std::size_t>(j)], n);
      const Wrapped s = wrap_half(2 * a - e.js[static_cast<std::size_t>(j)], n);
      C(a, j) = r.sign * s.sign * std::conj(f2[r.idx]) * f2[s.idx];
    }
  const CMatrix E = eps_kernel(e, d, kax);
  CMatrix W = (d / kTwoPi) * (C * E);
  Dist2D out{f.axis, kax, std::move(W), Kind::wigner};
  if (realness_ratio(out) > 1e-9)
    throw Error(Errc::ValidationError, "wigner_1d produced a non-real distribution");
  return out;
}

Dist4D wigner_4d(const SeparableField& f, WarningSink* sink) {
  const ComplexField1D fx = to_position_domain(f.spatial);
  const ComplexField1D gw = to_frequency_domain(f.spectral);
  Dist4D out;
  out.kind = Kind::wigner;
  out.rep = Dist4D::Separable{wigner_1d(fx, sink), wigner_1d(gw, sink)};
  return out;
}

Dist4D wigner_4d_dense(const ComplexField2D& f, const MemoryBudget& budget, WarningSink* sink) {
  if (f.domain != Domain::x_omega)
    throw Error(Errc::UnitMismatch, "wigner_4d_dense expects an (x, omega) field");
  const int n1 = f.axis1.n, n2 = f.axis2.n;
  const std::size_t need = static_cast<std::size_t>(n1) * n1 * n2 * n2 * sizeof(Complex);
  if (need > budget.bytes)
    throw Error(Errc::BudgetExceeded,
                "dense 4D Wigner needs " + std::to_string(need >> 20) + " MiB, budget " +
                    std::to_string(budget.bytes >> 20) + " MiB");
  check_aliasing(f, sink, "wigner_4d_dense");

  const SampledAxis pax = conjugate_axis(f.axis1);
  const SampledAxis tax = conjugate_axis(f.axis2);
  const CMatrix E2 = refine_matrix(f.axis1) * f.values * refine_matrix(f.axis2).transpose();
  const EpsLattice e1 = eps_lattice(n1), e2 = eps_lattice(n2);
  const auto nj1 = static_cast<Eigen::Index>(e1.js.size());
  const auto nj2 = static_cast<Eigen::Index>(e2.js.size());
  const CMatrix Ep = eps_kernel(e1, f.axis1.step(), pax);  // (nj1, np)
  const CMatrix Et = eps_kernel(e2, f.axis2.step(), tax);  // (nj2, nt)
  const double scale = f.axis1.step() * f.axis2.step() / (kTwoPi * kTwoPi);

  Dist4D::Dense dn;
  dn.axes = {f.axis1, pax, f.axis2, tax};
  dn.values.resize(static_cast<std::size_t>(n1) * n1 * n2 * n2);
  CMatrix C(nj1, nj2);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      for (Eigen::Index k = 0; k < nj1; ++k) {
        const Wrapped r1 = wrap_half(2 * i + e1.js[static_cast<std::size_t>(k)], n1);
        const Wrapped s1 = wrap_half(2 * i - e1.js[static_cast<std::size_t>(k)], n1);
        for (Eigen::Index l = 0; l < nj2; ++l) {
          const Wrapped r2 = wrap_half(2 * j + e2.js[static_cast<std::size_t>(l)], n2);
          const Wrapped s2 = wrap_half(2 * j - e2.js[static_cast<std::size_t>(l)], n2);
          C(k, l) = (r1.sign * r2.sign * s1.sign * s2.sign) *
                    std::conj(E2(r1.idx, r2.idx)) * E2(s1.idx, s2.idx);
        }
      }
      const CMatrix block = scale * (Ep.transpose() * (C * Et));  // (np, nt)
      for (int ip = 0; ip < n1; ++ip)
        for (int it = 0; it < n2; ++it) dn.values[dn.index(i, ip, j, it)] = block(ip, it);
    }
  }
  Dist4D out;
  out.kind = Kind::wigner;
  out.rep = std::move(dn);
  return out;
}

Dist4D kirkwood_4d(const SeparableField& f, WarningSink* sink) {
  const ComplexField1D fx = to_position_domain(f.spatial);
  const ComplexField1D gw = to_frequency_domain(f.spectral);
  check_aliasing(fx, sink, "kirkwood_4d");
  check_aliasing(gw, sink, "kirkwood_4d");
  Dist4D out;
  out.kind = Kind::kirkwood;
  out.rep = Dist4D::Separable{kirkwood_pair(fx, sink), kirkwood_pair(gw, sink)};
  return out;
}

Dist4D invert_k_to_w(const Dist4D& k, const MemoryBudget& budget) {
  if (k.kind != Kind::kirkwood)
    throw Error(Errc::NotKirkwood, "invert_k_to_w needs a kirkwood-kind distribution");
  Dist4D out;
  out.kind = Kind::wigner;
  if (k.separable()) {
    const auto& s = k.sep();
    Dist2D ixp{s.factor_xp.axis1, s.factor_xp.axis2,
               invert_pair_impl(s.factor_xp.values, s.factor_xp.axis1, s.factor_xp.axis2),
               Kind::wigner};
    Dist2D iwt{s.factor_wt.axis1, s.factor_wt.axis2,
               invert_pair_impl(s.factor_wt.values, s.factor_wt.axis1, s.factor_wt.axis2),
               Kind::wigner};
    out.rep = Dist4D::Separable{std::move(ixp), std::move(iwt)};
    return out;
  }

  const auto& dn = k.dense();
  const auto ax = dn.axes;
  const std::size_t need = dn.values.size() * sizeof(Complex);
  if (need > budget.bytes)
    throw Error(Errc::BudgetExceeded,
                "dense inversion needs " + std::to_string(need >> 20) + " MiB working copy, budget " +
                    std::to_string(budget.bytes >> 20) + " MiB");
  Dist4D::Dense work = dn;

  // pass 1: (x0,p0) -> (x,p) for every (w0,t0) plane
  const int n1 = ax[0].n, n2 = ax[1].n, n3 = ax[2].n, n4 = ax[3].n;
  CMatrix slice(n1, n2);
  for (int iw = 0; iw < n3; ++iw)
    for (int it = 0; it < n4; ++it) {
      for (int ix = 0; ix < n1; ++ix)
        for (int ip = 0; ip < n2; ++ip) slice(ix, ip) = work.values[work.index(ix, ip, iw, it)];
      slice = invert_pair_impl(slice, ax[0], ax[1]);
      for (int ix = 0; ix < n1; ++ix)
        for (int ip = 0; ip < n2; ++ip) work.values[work.index(ix, ip, iw, it)] = slice(ix, ip);
    }
  // pass 2: (w0,t0) -> (w,t) for every (x,p) point; that block is contiguous
  CMatrix wt(n3, n4);
  for (int ix = 0; ix < n1; ++ix)
    for (int ip = 0; ip < n2; ++ip) {
      for (int iw = 0; iw < n3; ++iw)
        for (int it = 0; it < n4; ++it) wt(iw, it) = work.values[work.index(ix, ip, iw, it)];
      wt = invert_pair_impl(wt, ax[2], ax[3]);
      for (int iw = 0; iw < n3; ++iw)
        for (int it = 0; it < n4; ++it)
          work.values[work.index(ix, ip, iw, it)] = Complex(wt(iw, it).real(), 0.0);
    }
  out.rep = std::move(work);
  return out;
}

Dist2D marginal_xw(const Dist4D& d) {
  if (d.kind != Kind::wigner) throw Error(Errc::NotWigner, "marginals need a wigner-kind input");
  const auto ax = d.axes();
  if (d.separable()) {
    const auto& s = d.sep();
    const CVector m1 = s.factor_xp.values.rowwise().sum() * s.factor_xp.axis2.step();
    const CVector m2 = s.factor_wt.values.rowwise().sum() * s.factor_wt.axis2.step();
    CMatrix v = (m1 * m2.transpose()).real().cast<Complex>();
    return Dist2D{ax[0], ax[2], std::move(v), Kind::wigner};
  }
  const auto& dn = d.dense();
  CMatrix v = CMatrix::Zero(ax[0].n, ax[2].n);
  for (int ix = 0; ix < ax[0].n; ++ix)
    for (int ip = 0; ip < ax[1].n; ++ip)
      for (int iw = 0; iw < ax[2].n; ++iw)
        for (int it = 0; it < ax[3].n; ++it) v(ix, iw) += dn.values[dn.index(ix, ip, iw, it)];
  v *= ax[1].step() * ax[3].step();
  return Dist2D{ax[0], ax[2], v.real().cast<Complex>(), Kind::wigner};
}

Dist2D marginal_pt(const Dist4D& d) {
  if (d.kind != Kind::wigner) throw Error(Errc::NotWigner, "marginals need a wigner-kind input");
  const auto ax = d.axes();
  if (d.separable()) {
    const auto& s = d.sep();
    const CVector m1 = s.factor_xp.values.colwise().sum().transpose() * s.factor_xp.axis1.step();
    const CVector m2 = s.factor_wt.values.colwise().sum().transpose() * s.factor_wt.axis1.step();
    CMatrix v = (m1 * m2.transpose()).real().cast<Complex>();
    return Dist2D{ax[1], ax[3], std::move(v), Kind::wigner};
  }
  const auto& dn = d.dense();
  CMatrix v = CMatrix::Zero(ax[1].n, ax[3].n);
  for (int ix = 0; ix < ax[0].n; ++ix)
    for (int ip = 0; ip < ax[1].n; ++ip)
      for (int iw = 0; iw < ax[2].n; ++iw)
        for (int it = 0; it < ax[3].n; ++it) v(ip, it) += dn.values[dn.index(ix, ip, iw, it)];
  v *= ax[0].step() * ax[2].step();
  return Dist2D{ax[1], ax[3], v.real().cast<Complex>(), Kind::wigner};
}

Complex total_integral(const Dist4D& d) {
  const auto ax = d.axes();
  const double dv = ax[0].step() * ax[1].step() * ax[2].step() * ax[3].step();
  if (d.separable()) {
    const auto& s = d.sep();
    const Complex s1 = s.factor_xp.values.sum();
    const Complex s2 = s.factor_wt.values.sum();
    const Complex tot = s1 * s2 * dv;
    return d.kind == Kind::wigner ? Complex(tot.real(), 0.0) : tot;
  }
  Complex acc(0.0, 0.0);
  for (const Complex& v : d.dense().values) acc += v;
  return acc * dv;
}

CVector marginal_axis1(const Dist2D& d) { return d.values.rowwise().sum() * d.axis2.step(); }
CVector marginal_axis2(const Dist2D& d) {
  return d.values.colwise().sum().transpose() * d.axis1.step();
}

SliceResult slice(const Dist4D& d, const SliceSpec& s) {
  const auto ax = d.axes();
  const std::array<std::optional<double>, 4> fixed{s.x, s.p, s.w, s.t};
  static const char* names[4] = {"x", "p", "w", "t"};
  std::vector<int> fixed_dims, free_dims;
  for (int dim = 0; dim < 4; ++dim)
    (fixed[dim].has_value() ? fixed_dims : free_dims).push_back(dim);
  if (fixed_dims.size() != 2)
    throw Error(Errc::ValidationError, "slice needs exactly two fixed coordinates");

  std::array<int, 4> idx{0, 0, 0, 0};
  SliceResult out;
  for (std::size_t q = 0; q < 2; ++q) {
    const int dim = fixed_dims[q];
    const double want = *fixed[dim];
    if (want < ax[dim].lo() - 0.5 * ax[dim].step() || want > ax[dim].hi() + 0.5 * ax[dim].step())
      throw Error(Errc::OutOfRange, std::string("slice coordinate ") + names[dim] + "=" +
                                        std::to_string(want) + " outside the grid");
    idx[dim] = ax[dim].nearest_index(want);
    out.fixed_names[q] = names[dim];
    out.requested[q] = want;
    out.snapped[q] = ax[dim].value(idx[dim]);
  }

  const int d1 = free_dims[0], d2 = free_dims[1];
  CMatrix v(ax[d1].n, ax[d2].n);
  if (d.separable()) {
    const auto& sp = d.sep();
    auto at = [&](int ix, int ip, int iw, int it) {
      const Complex prod = sp.factor_xp.values(ix, ip) * sp.factor_wt.values(iw, it);
      return d.kind == Kind::wigner ? Complex(prod.real(), 0.0) : prod;
    };
    for (int i = 0; i < ax[d1].n; ++i)
      for (int j = 0; j < ax[d2].n; ++j) {
        idx[d1] = i;
        idx[d2] = j;
        v(i, j) = at(idx[0], idx[1], idx[2], idx[3]);
      }
  } else {
    const auto& dn = d.dense();
    for (int i = 0; i < ax[d1].n; ++i)
      for (int j = 0; j < ax[d2].n; ++j) {
        idx[d1] = i;
        idx[d2] = j;
        v(i, j) = dn.values[dn.index(idx[0], idx[1], idx[2], idx[3])];
      }
  }
  out.dist = Dist2D{ax[d1], ax[d2], std::move(v), d.kind};
  return out;
}

Complex value_at(const Dist4D& d, double x, double p, double w, double t) {
  const auto ax = d.axes();
  return d.value(ax[0].nearest_index(x), ax[1].nearest_index(p), ax[2].nearest_index(w),
                 ax[3].nearest_index(t));
}

double rel_l2(const Dist4D& a, const Dist4D& b) {
  const auto axa = a.axes();
  const auto axb = b.axes();
  for (int i = 0; i < 4; ++i)
    if (!axa[i].same_grid(axb[i]))
      throw Error(Errc::AxisMismatch, "rel_l2 needs identical grids");
  double num = 0.0, den = 0.0;
  for (int iw = 0; iw < axa[2].n; ++iw)
    for (int it = 0; it < axa[3].n; ++it) {
      const CMatrix pa = dist_plane(a, iw, it);
      const CMatrix pb = dist_plane(b, iw, it);
      num += (pa - pb).squaredNorm();
      den += pb.squaredNorm();
    }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace opstft::phasespace
