#ifndef CTMHD_MHD_HPP_
#define CTMHD_MHD_HPP_

#include <array>
#include <cmath>

#include "common.hpp"

namespace ctmhd {

//! Point values of the conserved MHD variables.
struct PointState {
  double rho = 1.0;
  std::array<double, 3> m{0, 0, 0};  // momentum density
  double e = 0.0;                    // total energy density
  std::array<double, 3> b{0, 0, 0};

  std::array<double, 3> velocity() const { return {m[0] / rho, m[1] / rho, m[2] / rho}; }
};

struct PhysicsParams {
  double gamma = 5.0 / 3.0;
  double mu = 0.0;      // dynamic viscosity
  double eta = 0.0;     // magnetic diffusivity
  double lambda = 0.0;  // energy-sink constant
};

//! Thermal pressure p = (gamma-1)(e - rho|v|^2/2 - |b|^2/2).
//! Non-positive pressure aborts: the scope is smooth subsonic flow and a
//! floor would mask scheme bugs.
inline double pressure(const PointState& s, double gamma) {
  double ke = 0.5 * (s.m[0] * s.m[0] + s.m[1] * s.m[1] + s.m[2] * s.m[2]) / s.rho;
  double me = 0.5 * (s.b[0] * s.b[0] + s.b[1] * s.b[1] + s.b[2] * s.b[2]);
  double p = (gamma - 1.0) * (s.e - ke - me);
  if (!(s.rho > 0.0)) throw NumericError("unphysical state: rho <= 0");
  if (!(p > 0.0)) throw NumericError("unphysical state: p <= 0");
  return p;
}

//! Five hydrodynamic flux components (rho, rho v, e) projected on direction
//! `dir`, ideal part only; viscous terms are added at the area-average stage.
inline std::array<double, 5> ideal_flux(const PointState& s, double gamma, int dir) {
  double p = pressure(s, gamma);
  auto v = s.velocity();
  double bsq2 = 0.5 * (s.b[0] * s.b[0] + s.b[1] * s.b[1] + s.b[2] * s.b[2]);
  double vdotb = v[0] * s.b[0] + v[1] * s.b[1] + v[2] * s.b[2];
  double vn = v[dir];
  double bn = s.b[dir];
  std::array<double, 5> f;
  f[0] = s.rho * vn;
  for (int c = 0; c < 3; ++c) f[1 + c] = s.m[c] * vn - bn * s.b[c];
  f[1 + dir] += p + bsq2;
  f[4] = (s.e + p + bsq2) * vn - bn * vdotb;
  return f;
}

//! Fast magneto-sonic speed along direction `dir`.
inline double fast_speed(const PointState& s, double gamma, int dir) {
  double p = pressure(s, gamma);
  double cs2 = gamma * p / s.rho;
  double ca2 = (s.b[0] * s.b[0] + s.b[1] * s.b[1] + s.b[2] * s.b[2]) / s.rho;
  double bn2 = s.b[dir] * s.b[dir] / s.rho;
  double sum = cs2 + ca2;
  double rad = sum * sum - 4.0 * cs2 * bn2;
  if (rad < 0.0) {
    if (rad < -1e-12 * sum * sum) throw NumericError("fast_speed: negative radicand");
    rad = 0.0;
  }
  return std::sqrt(0.5 * (sum + std::sqrt(rad)));
}

//! LLF signal speed: max over the two sides of |v_n| + c_f.
inline double max_signal_speed(const PointState& left, const PointState& right, double gamma,
                               int dir) {
  double al = std::abs(left.m[dir] / left.rho) + fast_speed(left, gamma, dir);
  double ar = std::abs(right.m[dir] / right.rho) + fast_speed(right, gamma, dir);
  return std::max(al, ar);
}

//! Stefan-Boltzmann-like internal energy sink S_e = lambda U^4.
inline double energy_sink_point(double internal_energy, double lambda) {
  double u2 = internal_energy * internal_energy;
  return lambda * u2 * u2;
}

}  // namespace ctmhd

#endif  // CTMHD_MHD_HPP_
