#ifndef CTMHD_RHS_HPP_
#define CTMHD_RHS_HPP_

#include <array>
#include <optional>

#include "grid.hpp"
#include "riemann.hpp"
#include "transforms.hpp"
#include "weno.hpp"

namespace ctmhd {

//! Evolved unknowns: volume-averaged hydro fields plus the staggered
//! area-averaged magnetic field.
struct ConservedState {
  std::array<Field3, 5> hydro;  // rho, mx, my, mz, e
  StaggeredField b;
  double time = 0.0;

  ConservedState() = default;
  explicit ConservedState(const Grid& g) : b(g) {
    for (auto& f : hydro) f.resize(g.nx, g.ny, g.nz, g.ghost);
  }

  Field3& rho() { return hydro[0]; }
  const Field3& rho() const { return hydro[0]; }
  Field3& mom(int c) { return hydro[1 + c]; }
  const Field3& mom(int c) const { return hydro[1 + c]; }
  Field3& energy() { return hydro[4]; }
  const Field3& energy() const { return hydro[4]; }

  //! this += a * other, over every lattice value (ghosts included).
  void axpy(double a, const ConservedState& o) {
    for (int q = 0; q < 5; ++q) hydro[q].axpy(a, o.hydro[q]);
    for (int d = 0; d < 3; ++d) b[d].axpy(a, o.b[d]);
  }
  void scale(double a) {
    for (auto& f : hydro) f *= a;
    for (int d = 0; d < 3; ++d) b[d] *= a;
  }
  //! this = sum of coeff[i] * states[i].
  void linear_combination(const std::vector<double>& coeff,
                          const std::vector<const ConservedState*>& states);
};

using RhsOutput = ConservedState;  // same layout, holds time derivatives

enum class RhsMode {
  kFull,             // ideal MHD fluxes plus enabled non-ideal terms
  kDissipativeOnly,  // viscous/resistive terms only (validation mode)
};

//! Numerical scheme selection for the right-hand side.
struct SchemeConfig {
  int order = 4;  // 2, 4, 6, 8, 10
  double weno_eps = 1e-6;
  double weno_p = 2.0;
  bool point_passage = true;  // false reproduces the degraded S8P variant
  RhsMode mode = RhsMode::kFull;

  int weno_n() const { return order / 2; }
  static int ghost_width(int order) { return order / 2 + 1; }
};

//! Forcing contributions for one step, already normalized.
struct ForcingTerms {
  std::array<Field3, 3> f_momentum;  // volume-averaged rho * A_K * f^OU,K
  Field3 f_energy;                   // volume-averaged v.f_K + b.(A_M f^OU,M)
  StaggeredField f_induction;        // staggered area-averaged A_M f^OU,M

  ForcingTerms() = default;
  explicit ForcingTerms(const Grid& g) : f_induction(g) {
    for (auto& f : f_momentum) f.resize(g.nx, g.ny, g.nz, g.ghost);
    f_energy.resize(g.nx, g.ny, g.nz, g.ghost);
  }
};

//! Per-direction interface data produced by the reconstruction stage:
//! area-averaged and point-valued left/right states of all eight variables
//! on the faces normal to `dir` (slot i holds the face at i-1/2).
struct FaceReconstruction {
  int dir = 0;
  // [var][side]: var 0..4 hydro, 5..7 magnetic; side 0 = minus (from the
  // lower cell), side 1 = plus
  std::array<std::array<Field3, 2>, 8> area;
  std::array<std::array<Field3, 2>, 8> point;
};

//! Scratch buffers reused across RHS evaluations; sized once per grid.
struct RhsWorkspace;

class RhsAssembler {
 public:
  RhsAssembler(const Grid& grid, const SchemeConfig& scheme, const PhysicsParams& params);
  ~RhsAssembler();

  //! Full right-hand side. `forcing` may be null. Output fields are
  //! overwritten; ghosts of `state` are refreshed in place.
  void compute_rhs(ConservedState& state, RhsOutput& out, const ForcingTerms* forcing = nullptr);

  //! Largest 1D signal speed seen during the last compute_rhs, per direction
  //! (used by the CFL criterion without an extra sweep).
  const std::array<double, 3>& max_speeds() const { return max_speed_; }

  //! Individual stages exposed for verification.
  void reconstruct_interfaces(ConservedState& state, int dir, FaceReconstruction& faces);
  void binterp_volumes(const ConservedState& state, std::array<Field3, 3>& bvol) const;
  void energy_sink_volume(ConservedState& state, Field3& sink);

  const Grid& grid() const { return grid_; }
  const SchemeConfig& scheme() const { return scheme_; }
  const PhysicsParams& params() const { return params_; }

 private:
  Grid grid_;
  SchemeConfig scheme_;
  PhysicsParams params_;
  WenoScheme weno_;
  RhsWorkspace* ws_;
  std::array<double, 3> max_speed_{0, 0, 0};

  void hydro_flux_direction(int dir, FaceReconstruction& faces, RhsOutput& out);
  void viscous_gradients();
  void resistive_current();
};

//! Stokes-theorem update of the staggered field from edge EMFs:
//! d/dt b_e = -diff_u(E_v)/du + diff_v(E_u)/dv for cyclic (e,u,v).
void ct_update(const EdgeField& emf, const Grid& g, StaggeredField& dbdt);

//! WENO sweep of a lattice field along `dir`: plus[slot i] and minus[slot i]
//! receive the two reconstructed states at interface i-1/2. Ghosts of `in`
//! must be filled; ghosts of the outputs are refreshed.
void weno_sweep(const Field3& in, const WenoScheme& w, int dir, Field3& minus, Field3& plus);

}  // namespace ctmhd

#endif  // CTMHD_RHS_HPP_
