#ifndef CTMHD_RIEMANN_HPP_
#define CTMHD_RIEMANN_HPP_

#include <algorithm>
#include <array>

#include "grid.hpp"
#include "mhd.hpp"

namespace ctmhd {

//! Local Lax-Friedrichs point flux for the five hydro components:
//! (F(left)+F(right))/2 - a/2 (q_right - q_left).
inline std::array<double, 5> llf_flux(const PointState& left, const PointState& right,
                                      double gamma, int dir, double a) {
  auto fl = ideal_flux(left, gamma, dir);
  auto fr = ideal_flux(right, gamma, dir);
  std::array<double, 5> f;
  const double ql[5] = {left.rho, left.m[0], left.m[1], left.m[2], left.e};
  const double qr[5] = {right.rho, right.m[0], right.m[1], right.m[2], right.e};
  for (int c = 0; c < 5; ++c) f[c] = 0.5 * (fl[c] + fr[c]) - 0.5 * a * (qr[c] - ql[c]);
  return f;
}

//! Line-averaged EMF at one edge from the four corner candidates and the
//! transverse magnetic line-average jumps (2D LLF). For a z-edge:
//! corner[0]=E^--, corner[1]=E^+- (x+), corner[2]=E^-+ (y+), corner[3]=E^++,
//! b_t1 = line-averaged b_x jump across y, b_t2 = b_y jump across x.
inline double llf_emf(const std::array<double, 4>& corner, double bt1_plus, double bt1_minus,
                      double bt2_plus, double bt2_minus, double speed) {
  double avg = 0.25 * (corner[0] + corner[1] + corner[2] + corner[3]);
  return avg + 0.5 * speed * (bt2_plus - bt2_minus) - 0.5 * speed * (bt1_plus - bt1_minus);
}

//! CT signal speed: max of the four 1D face speeds adjacent to the edge.
inline double ct_signal_speed(double a0, double a1, double a2, double a3) {
  return std::max(std::max(a0, a1), std::max(a2, a3));
}

//! Per-direction signal speeds for the dissipative-terms-only test mode,
//! where the hyperbolic speeds vanish and the scheme is stabilized by the
//! characteristic diffusion speed instead.
struct DiffusiveSpeeds {
  std::array<double, 3> face;  // a^x, a^y, a^z
  std::array<double, 3> edge;  // S for x-, y-, z-edges
};

inline DiffusiveSpeeds diffusive_signal_speed(const PhysicsParams& par, const Grid& g) {
  DiffusiveSpeeds s;
  for (int d = 0; d < 3; ++d) s.face[d] = (4.0 / 3.0) * par.mu / g.delta(d);
  s.edge[0] = par.eta / std::min(g.dy, g.dz);
  s.edge[1] = par.eta / std::min(g.dz, g.dx);
  s.edge[2] = par.eta / std::min(g.dx, g.dy);
  return s;
}

}  // namespace ctmhd

#endif  // CTMHD_RIEMANN_HPP_
