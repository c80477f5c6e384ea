#include "rhs.hpp"

#include <cmath>
#include <sstream>

namespace ctmhd {

void ConservedState::linear_combination(const std::vector<double>& coeff,
                                        const std::vector<const ConservedState*>& states) {
  if (coeff.size() != states.size() || states.empty())
    throw NumericError("linear_combination: shape mismatch");
  for (int q = 0; q < 5; ++q) {
    auto& dst = hydro[q].data;
    for (size_t idx = 0; idx < dst.size(); ++idx) {
      double acc = 0.0;
      for (size_t s = 0; s < coeff.size(); ++s) acc += coeff[s] * states[s]->hydro[q].data[idx];
      dst[idx] = acc;
    }
  }
  for (int d = 0; d < 3; ++d) {
    auto& dst = b[d].data;
    for (size_t idx = 0; idx < dst.size(); ++idx) {
      double acc = 0.0;
      for (size_t s = 0; s < coeff.size(); ++s) acc += coeff[s] * states[s]->b[d].data[idx];
      dst[idx] = acc;
    }
  }
}

namespace {

inline std::array<int, 3> unit(int dir) {
  std::array<int, 3> e{0, 0, 0};
  e[dir] = 1;
  return e;
}

}  // namespace

void weno_sweep(const Field3& in, const WenoScheme& w, int dir, Field3& minus, Field3& plus) {
  const int n = w.n;
  if (in.ng < n + 1) throw ConfigError("weno_sweep: ghost width too small for stencil");
  if (minus.nx != in.nx || minus.ny != in.ny || minus.nz != in.nz)
    minus.resize(in.nx, in.ny, in.nz, in.ng);
  if (plus.nx != in.nx || plus.ny != in.ny || plus.nz != in.nz)
    plus.resize(in.nx, in.ny, in.nz, in.ng);
  const auto e = unit(dir);
  const long stride = in.index(e[0], e[1], e[2]) - in.index(0, 0, 0);
  const int ndir = dir == 0 ? in.nx : dir == 1 ? in.ny : in.nz;
  parallel_for(0, in.nz, [&](long kk) {
    int k = static_cast<int>(kk);
    double window[11];
    for (int j = 0; j < in.ny; ++j)
      for (int i = 0; i < in.nx; ++i) {
        long c = in.index(i, j, k);
        for (int wdx = 0; wdx < 2 * n + 1; ++wdx)
          window[wdx] = in.data[c + (wdx - n) * stride];
        double left, right;
        weno_reconstruct(w, window, &left, &right);
        plus.data[c] = left;
        int cd = dir == 0 ? i : dir == 1 ? j : k;
        long up = (cd + 1 == ndir) ? c + (1 - ndir) * stride : c + stride;
        minus.data[up] = right;
      }
  });
  fill_ghost_periodic(minus);
  fill_ghost_periodic(plus);
}

//! Scratch buffers; all face/cell lattices share the Field3 layout.
struct RhsWorkspace {
  FaceReconstruction faces;
  std::array<Field3, 3> bvol;
  Field3 spd[3];
  Field3 ptE[3][3][2];  // [face dir][E component][side], component != dir
  Field3 flux_pt[5], flux_area[5];
  Field3 recon_tmp[2];
  // viscous
  Field3 vface[3][3];
  Field3 grad[3][3];
  Field3 divv;
  // resistive
  Field3 bA[3][3];
  Field3 jvol[3];
  // constrained transport
  Field3 ct_side[2][2];   // [route][side]
  Field3 ct_line[2][2][2];  // [route][field side][interface side]
  Field3 ct_bline[2][2];
  EdgeField emf;
  // energy sink
  Field3 sink_a, sink_b, sink_c;

  explicit RhsWorkspace(const Grid& g) : emf(g) {
    auto sz = [&](Field3& f) { f.resize(g.nx, g.ny, g.nz, g.ghost); };
    for (int v = 0; v < 8; ++v)
      for (int s = 0; s < 2; ++s) {
        sz(faces.area[v][s]);
        sz(faces.point[v][s]);
      }
    for (auto& f : bvol) sz(f);
    for (auto& f : spd) sz(f);
    for (int m = 0; m < 3; ++m)
      for (int e = 0; e < 3; ++e)
        if (e != m)
          for (int s = 0; s < 2; ++s) sz(ptE[m][e][s]);
    for (auto& f : flux_pt) sz(f);
    for (auto& f : flux_area) sz(f);
    for (auto& f : recon_tmp) sz(f);
    sz(divv);
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s) {
        sz(ct_side[r][s]);
        sz(ct_bline[r][s]);
        for (int t = 0; t < 2; ++t) sz(ct_line[r][s][t]);
      }
    sz(sink_a);
    sz(sink_b);
    sz(sink_c);
  }

  void ensure_viscous(const Grid& g) {
    if (vface[0][0].nx) return;
    for (int m = 0; m < 3; ++m)
      for (int c = 0; c < 3; ++c) {
        vface[m][c].resize(g.nx, g.ny, g.nz, g.ghost);
        grad[m][c].resize(g.nx, g.ny, g.nz, g.ghost);
      }
  }
  void ensure_resistive(const Grid& g) {
    if (jvol[0].nx) return;
    for (int m = 0; m < 3; ++m)
      for (int c = 0; c < 3; ++c)
        if (c != m) bA[m][c].resize(g.nx, g.ny, g.nz, g.ghost);
    for (auto& f : jvol) f.resize(g.nx, g.ny, g.nz, g.ghost);
  }
};

RhsAssembler::RhsAssembler(const Grid& grid, const SchemeConfig& scheme,
                           const PhysicsParams& params)
    : grid_(grid), scheme_(scheme), params_(params) {
  if (scheme.order < 2 || scheme.order > 10 || scheme.order % 2)
    throw ConfigError("scheme order must be one of 2, 4, 6, 8, 10");
  if (scheme.order > 2 && !grid.spacings_equal())
    throw ConfigError("orders above 2 require equal grid spacings");
  if (grid.ghost < SchemeConfig::ghost_width(scheme.order))
    throw ConfigError("ghost width too small for the configured order");
  weno_ = build_weno_scheme(scheme.weno_n(), scheme.weno_eps, scheme.weno_p);
  ws_ = new RhsWorkspace(grid);
  if (params.mu > 0.0) ws_->ensure_viscous(grid);
  if (params.eta > 0.0) ws_->ensure_resistive(grid);
}

RhsAssembler::~RhsAssembler() { delete ws_; }

void RhsAssembler::binterp_volumes(const ConservedState& state, std::array<Field3, 3>& bvol) const {
  staggered_b_to_volume(state.b, grid_, scheme_.order, bvol);
  for (auto& f : bvol) fill_ghost_periodic(f);
}

void RhsAssembler::reconstruct_interfaces(ConservedState& state, int dir, FaceReconstruction& faces) {
  faces.dir = dir;
  const bool use_point = scheme_.point_passage && scheme_.order > 2;
  for (int v = 0; v < 8; ++v) {
    Field3& aminus = faces.area[v][0];
    Field3& aplus = faces.area[v][1];
    if (v < 5) {
      weno_sweep(state.hydro[v], weno_, dir, aminus, aplus);
    } else {
      int c = v - 5;
      if (c == dir) {
        // the normal component is the stored constrained-transport area
        // average: single-valued across the face
        aminus.data = state.b[c].data;
        aplus.data = state.b[c].data;
      } else {
        weno_sweep(ws_->bvol[c], weno_, dir, aminus, aplus);
      }
    }
    if (use_point) {
      const TransformTable& atop = transform_table(scheme_.order, TransformKind::kAreaToPoint);
      for (int s = 0; s < 2; ++s) {
        apply_face_transform(faces.area[v][s], faces.point[v][s], atop, dir);
        fill_ghost_periodic(faces.point[v][s]);
      }
    }
  }
}

void RhsAssembler::hydro_flux_direction(int dir, FaceReconstruction& faces, RhsOutput& out) {
  const Grid& g = grid_;
  const bool use_point = scheme_.point_passage && scheme_.order > 2;
  const bool full = scheme_.mode == RhsMode::kFull;
  const Field3* P[8][2];
  for (int v = 0; v < 8; ++v)
    for (int s = 0; s < 2; ++s) P[v][s] = use_point ? &faces.point[v][s] : &faces.area[v][s];

  DiffusiveSpeeds dspd = diffusive_signal_speed(params_, g);
  Field3& spd = ws_->spd[dir];
  const int eu = (dir + 1) % 3, ev = (dir + 2) % 3;

  auto face_state = [&](long idx, int side) {
    PointState st;
    st.rho = P[0][side]->data[idx];
    st.m = {P[1][side]->data[idx], P[2][side]->data[idx], P[3][side]->data[idx]};
    st.e = P[4][side]->data[idx];
    st.b = {P[5][side]->data[idx], P[6][side]->data[idx], P[7][side]->data[idx]};
    return st;
  };

  try {
    parallel_for(0, g.nz, [&](long kk) {
      int k = static_cast<int>(kk);
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
          long idx = spd.index(i, j, k);
          PointState sl = face_state(idx, 0);
          PointState sr = face_state(idx, 1);
          double a;
          std::array<double, 5> f{0, 0, 0, 0, 0};
          if (full) {
            a = max_signal_speed(sl, sr, params_.gamma, dir);
            f = llf_flux(sl, sr, params_.gamma, dir, a);
          } else {
            a = dspd.face[dir];
            for (int c = 0; c < 3; ++c) f[1 + c] = -0.5 * a * (sr.m[c] - sl.m[c]);
          }
          spd.data[idx] = a;
          for (int q = 0; q < 5; ++q) ws_->flux_pt[q].data[idx] = f[q];
          // tangential electric-field components on this face, per side
          for (int s = 0; s < 2; ++s) {
            const PointState& st = s ? sr : sl;
            if (full) {
              auto v = st.velocity();
              // E = -v x b
              ws_->ptE[dir][eu][s].data[idx] = -(v[ev] * st.b[dir] - v[dir] * st.b[ev]);
              ws_->ptE[dir][ev][s].data[idx] = -(v[dir] * st.b[eu] - v[eu] * st.b[dir]);
            } else {
              ws_->ptE[dir][eu][s].data[idx] = 0.0;
              ws_->ptE[dir][ev][s].data[idx] = 0.0;
            }
          }
        }
    });
  } catch (const NumericError& err) {
    // locate the offending face for the abort message
    for (int k = 0; k < g.nz; ++k)
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
          long idx = spd.index(i, j, k);
          try {
            PointState sl = face_state(idx, 0);
            PointState sr = face_state(idx, 1);
            (void)pressure(sl, params_.gamma);
            (void)pressure(sr, params_.gamma);
          } catch (const NumericError&) {
            std::ostringstream os;
            os << err.what() << " at face dir=" << dir << " slot=(" << i << "," << j << "," << k
               << ")";
            throw NumericError(os.str());
          }
        }
    throw;
  }

  double amax = 0.0;
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) amax = std::max(amax, spd(i, j, k));
  max_speed_[dir] = amax;
  fill_ghost_periodic(spd);
  for (int s = 0; s < 2; ++s) {
    fill_ghost_periodic(ws_->ptE[dir][eu][s]);
    fill_ghost_periodic(ws_->ptE[dir][ev][s]);
  }
  for (int q = 0; q < 5; ++q) fill_ghost_periodic(ws_->flux_pt[q]);

  Field3* FA[5];
  if (use_point) {
    const TransformTable& ptoa = transform_table(scheme_.order, TransformKind::kPointToArea);
    for (int q = 0; q < 5; ++q) {
      apply_face_transform(ws_->flux_pt[q], ws_->flux_area[q], ptoa, dir);
      FA[q] = &ws_->flux_area[q];
    }
  } else {
    for (int q = 0; q < 5; ++q) FA[q] = &ws_->flux_pt[q];
  }

  if (params_.mu > 0.0) {
    // two-side mean of the reconstructed velocity gradients, added to the
    // area-averaged momentum fluxes
    for (int n = 0; n < 3; ++n) {
      weno_sweep(ws_->grad[dir][n], weno_, dir, ws_->recon_tmp[0], ws_->recon_tmp[1]);
      Field3& fa = *FA[1 + n];
      for (size_t idx = 0; idx < fa.data.size(); ++idx)
        fa.data[idx] -=
            params_.mu * 0.5 * (ws_->recon_tmp[0].data[idx] + ws_->recon_tmp[1].data[idx]);
    }
    weno_sweep(ws_->divv, weno_, dir, ws_->recon_tmp[0], ws_->recon_tmp[1]);
    Field3& fa = *FA[1 + dir];
    for (size_t idx = 0; idx < fa.data.size(); ++idx)
      fa.data[idx] -= params_.mu * (1.0 / 3.0) * 0.5 *
                      (ws_->recon_tmp[0].data[idx] + ws_->recon_tmp[1].data[idx]);
  }

  // flux divergence, accumulated in a fixed direction order
  const auto e = unit(dir);
  const double inv_d = 1.0 / g.delta(dir);
  for (int q = 0; q < 5; ++q) {
    fill_ghost_periodic(*FA[q]);
    const Field3& fa = *FA[q];
    Field3& dst = out.hydro[q];
    const long up = fa.index(e[0], e[1], e[2]) - fa.index(0, 0, 0);
    parallel_for(0, g.nz, [&](long kk) {
      int k = static_cast<int>(kk);
      for (int j = 0; j < g.ny; ++j) {
        long base = fa.index(0, j, k);
        for (int i = 0; i < g.nx; ++i)
          dst.data[base + i] -= (fa.data[base + i + up] - fa.data[base + i]) * inv_d;
      }
    });
  }
}

void RhsAssembler::viscous_gradients() {
  const Grid& g = grid_;
  // exact difference quotients of the face area-averages
  for (int l = 0; l < 3; ++l) {
    const auto e = unit(l);
    const double inv_d = 1.0 / g.delta(l);
    for (int n = 0; n < 3; ++n) {
      const Field3& vf = ws_->vface[l][n];
      Field3& gr = ws_->grad[l][n];
      const long up = vf.index(e[0], e[1], e[2]) - vf.index(0, 0, 0);
      parallel_for(0, g.nz, [&](long kk) {
        int k = static_cast<int>(kk);
        for (int j = 0; j < g.ny; ++j) {
          long base = vf.index(0, j, k);
          for (int i = 0; i < g.nx; ++i)
            gr.data[base + i] = (vf.data[base + i + up] - vf.data[base + i]) * inv_d;
        }
      });
      fill_ghost_periodic(gr);
    }
  }
  for (size_t idx = 0; idx < ws_->divv.data.size(); ++idx)
    ws_->divv.data[idx] =
        ws_->grad[0][0].data[idx] + ws_->grad[1][1].data[idx] + ws_->grad[2][2].data[idx];
}

void RhsAssembler::resistive_current() {
  const Grid& g = grid_;
  // j = curl b from the transverse-face area averages; the difference
  // quotients are exact for the volume averages
  auto diff = [&](const Field3& f, int dir, long idx, long up) {
    return (f.data[idx + up] - f.data[idx]) / g.delta(dir);
  };
  for (int c = 0; c < 3; ++c) {
    int u = (c + 1) % 3, v = (c + 2) % 3;
    // j_c = d_u b_v - d_v b_u
    const Field3& bu = ws_->bA[u][v];  // b_v averaged on u-faces
    const Field3& bv = ws_->bA[v][u];  // b_u averaged on v-faces
    Field3& j = ws_->jvol[c];
    const auto euv = unit(u);
    const auto evv = unit(v);
    const long upu = bu.index(euv[0], euv[1], euv[2]) - bu.index(0, 0, 0);
    const long upv = bv.index(evv[0], evv[1], evv[2]) - bv.index(0, 0, 0);
    parallel_for(0, g.nz, [&](long kk) {
      int k = static_cast<int>(kk);
      for (int jj = 0; jj < g.ny; ++jj) {
        long base = bu.index(0, jj, k);
        for (int i = 0; i < g.nx; ++i)
          j.data[base + i] = diff(bu, u, base + i, upu) - diff(bv, v, base + i, upv);
      }
    });
    fill_ghost_periodic(j);
  }
}

void RhsAssembler::compute_rhs(ConservedState& state, RhsOutput& out,
                               const ForcingTerms* forcing) {
  const Grid& g = grid_;
  for (auto& f : state.hydro) fill_ghost_periodic(f);
  fill_ghost_periodic(state.b);
  for (auto& f : out.hydro) {
    if (f.nx != g.nx || f.ny != g.ny || f.nz != g.nz) f.resize(g.nx, g.ny, g.nz, g.ghost);
    f.fill(0.0);
  }
  for (int d = 0; d < 3; ++d) {
    if (out.b[d].nx != g.nx || out.b[d].ny != g.ny || out.b[d].nz != g.nz)
      out.b[d].resize(g.nx, g.ny, g.nz, g.ghost);
    out.b[d].fill(0.0);
  }

  binterp_volumes(state, ws_->bvol);

  const bool use_point = scheme_.point_passage && scheme_.order > 2;
  const bool need_viscous = params_.mu > 0.0;
  const bool need_resistive = params_.eta > 0.0;

  if (need_viscous || need_resistive) {
    if (need_viscous) ws_->ensure_viscous(g);
    if (need_resistive) ws_->ensure_resistive(g);
    const TransformTable& ptoa = transform_table(scheme_.order, TransformKind::kPointToArea);
    for (int dir = 0; dir < 3; ++dir) {
      reconstruct_interfaces(state, dir, ws_->faces);
      const Field3* P[8][2];
      for (int vv = 0; vv < 8; ++vv)
        for (int s = 0; s < 2; ++s)
          P[vv][s] = use_point ? &ws_->faces.point[vv][s] : &ws_->faces.area[vv][s];
      if (need_viscous) {
        for (int c = 0; c < 3; ++c) {
          Field3& tmp = ws_->recon_tmp[0];
          for (size_t idx = 0; idx < tmp.data.size(); ++idx) {
            double rl = P[0][0]->data[idx], rr = P[0][1]->data[idx];
            double ml = P[1 + c][0]->data[idx], mr = P[1 + c][1]->data[idx];
            tmp.data[idx] = 0.5 * (ml / rl + mr / rr);
          }
          if (use_point) {
            apply_face_transform(tmp, ws_->vface[dir][c], ptoa, dir);
          } else {
            ws_->vface[dir][c].data = tmp.data;
          }
          fill_ghost_periodic(ws_->vface[dir][c]);
        }
      }
      if (need_resistive) {
        for (int c = 0; c < 3; ++c) {
          if (c == dir) continue;
          Field3& tmp = ws_->recon_tmp[0];
          for (size_t idx = 0; idx < tmp.data.size(); ++idx)
            tmp.data[idx] = 0.5 * (P[5 + c][0]->data[idx] + P[5 + c][1]->data[idx]);
          if (use_point) {
            apply_face_transform(tmp, ws_->bA[dir][c], ptoa, dir);
          } else {
            ws_->bA[dir][c].data = tmp.data;
          }
          fill_ghost_periodic(ws_->bA[dir][c]);
        }
      }
    }
    if (need_viscous) viscous_gradients();
    if (need_resistive) resistive_current();
  }

  for (int dir = 0; dir < 3; ++dir) {
    reconstruct_interfaces(state, dir, ws_->faces);
    hydro_flux_direction(dir, ws_->faces, out);
  }

  // constrained transport: line-averaged EMF on every edge family
  for (int e = 0; e < 3; ++e) {
    const int u = (e + 1) % 3, v = (e + 2) % 3;
    for (int route = 0; route < 2; ++route) {
      const int fdir = route == 0 ? u : v;
      const int rdir = route == 0 ? v : u;
      for (int s = 0; s < 2; ++s) {
        Field3& side = ws_->ct_side[route][s];
        if (side.nx != g.nx) side.resize(g.nx, g.ny, g.nz, g.ghost);
        side.data = ws_->ptE[fdir][e][s].data;
        if (need_resistive) {
          weno_sweep(ws_->jvol[e], weno_, fdir, ws_->recon_tmp[0], ws_->recon_tmp[1]);
          const Field3& jr = ws_->recon_tmp[s];
          for (size_t idx = 0; idx < side.data.size(); ++idx)
            side.data[idx] += params_.eta * jr.data[idx];
          fill_ghost_periodic(side);
        }
        weno_sweep(side, weno_, rdir, ws_->ct_line[route][s][0], ws_->ct_line[route][s][1]);
      }
    }
    // transverse magnetic line averages for the dissipation terms
    weno_sweep(state.b[u], weno_, v, ws_->ct_bline[0][0], ws_->ct_bline[0][1]);
    weno_sweep(state.b[v], weno_, u, ws_->ct_bline[1][0], ws_->ct_bline[1][1]);

    const Field3& spd_u = ws_->spd[u];
    const Field3& spd_v = ws_->spd[v];
    const auto euv = unit(u);
    const auto evv = unit(v);
    Field3& emf = ws_->emf[e];
    const long back_u = emf.index(0, 0, 0) - emf.index(euv[0], euv[1], euv[2]);
    const long back_v = emf.index(0, 0, 0) - emf.index(evv[0], evv[1], evv[2]);
    parallel_for(0, g.nz, [&](long kk) {
      int k = static_cast<int>(kk);
      for (int j = 0; j < g.ny; ++j) {
        long base = emf.index(0, j, k);
        for (int i = 0; i < g.nx; ++i) {
          long idx = base + i;
          // corner E^{su sv}: route 0 carries the u-side in its field index
          // and the v-side in its interface index; route 1 the other way
          std::array<double, 4> corner;
          corner[0] = 0.5 * (ws_->ct_line[0][0][0].data[idx] + ws_->ct_line[1][0][0].data[idx]);
          corner[1] = 0.5 * (ws_->ct_line[0][1][0].data[idx] + ws_->ct_line[1][0][1].data[idx]);
          corner[2] = 0.5 * (ws_->ct_line[0][0][1].data[idx] + ws_->ct_line[1][1][0].data[idx]);
          corner[3] = 0.5 * (ws_->ct_line[0][1][1].data[idx] + ws_->ct_line[1][1][1].data[idx]);
          double speed;
          if (scheme_.mode == RhsMode::kFull) {
            speed = ct_signal_speed(spd_u.data[idx], spd_u.data[idx + back_v],
                                    spd_v.data[idx], spd_v.data[idx + back_u]);
          } else {
            speed = dspd.edge[e];
          }
          emf.data[idx] = llf_emf(corner, ws_->ct_bline[0][1].data[idx],
                                  ws_->ct_bline[0][0].data[idx], ws_->ct_bline[1][1].data[idx],
                                  ws_->ct_bline[1][0].data[idx], speed);
        }
      }
    });
    fill_ghost_periodic(emf);
  }
  ct_update(ws_->emf, g, out.b);

  if (params_.lambda > 0.0) {
    energy_sink_volume(state, ws_->recon_tmp[0]);
    for (size_t idx = 0; idx < out.energy().data.size(); ++idx)
      out.energy().data[idx] -= ws_->recon_tmp[0].data[idx];
  }

  if (forcing) {
    for (int c = 0; c < 3; ++c) out.mom(c) += forcing->f_momentum[c];
    out.energy() += forcing->f_energy;
    for (int d = 0; d < 3; ++d) out.b[d] += forcing->f_induction[d];
  }
}

void RhsAssembler::energy_sink_volume(ConservedState& state, Field3& sink) {
  const Grid& g = grid_;
  for (auto& f : state.hydro) fill_ghost_periodic(f);
  fill_ghost_periodic(state.b);
  binterp_volumes(state, ws_->bvol);
  const TransformTable& vtop = transform_table(scheme_.order, TransformKind::kVolumeToPoint);
  const TransformTable& ptov = transform_table(scheme_.order, TransformKind::kPointToVolume);
  Field3& rho_pt = ws_->sink_a;
  Field3& upt = ws_->sink_b;
  Field3& tmp = ws_->sink_c;
  apply_cell_transform(state.rho(), rho_pt, vtop);
  apply_cell_transform(state.energy(), upt, vtop);
  for (int c = 0; c < 3; ++c) {
    apply_cell_transform(state.mom(c), tmp, vtop);
    for (size_t idx = 0; idx < upt.data.size(); ++idx)
      upt.data[idx] -= 0.5 * tmp.data[idx] * tmp.data[idx] / rho_pt.data[idx];
  }
  for (int d = 0; d < 3; ++d) {
    apply_cell_transform(ws_->bvol[d], tmp, vtop);
    for (size_t idx = 0; idx < upt.data.size(); ++idx)
      upt.data[idx] -= 0.5 * tmp.data[idx] * tmp.data[idx];
  }
  // upt now holds the pointwise internal energy U; apply the sink law
  for (size_t idx = 0; idx < upt.data.size(); ++idx)
    upt.data[idx] = energy_sink_point(upt.data[idx], params_.lambda);
  fill_ghost_periodic(upt);
  if (sink.nx != g.nx || sink.ny != g.ny || sink.nz != g.nz)
    sink.resize(g.nx, g.ny, g.nz, g.ghost);
  apply_cell_transform(upt, sink, ptov);
}

void ct_update(const EdgeField& emf, const Grid& g, StaggeredField& dbdt) {
  for (int e = 0; e < 3; ++e) {
    const int u = (e + 1) % 3, v = (e + 2) % 3;
    const Field3& Eu = emf[u];
    const Field3& Ev = emf[v];
    Field3& db = dbdt[e];
    const auto euv = unit(u);
    const auto evv = unit(v);
    const long up_u = Eu.index(euv[0], euv[1], euv[2]) - Eu.index(0, 0, 0);
    const long up_v = Ev.index(evv[0], evv[1], evv[2]) - Ev.index(0, 0, 0);
    const double idu = 1.0 / g.delta(u);
    const double idv = 1.0 / g.delta(v);
    parallel_for(0, g.nz, [&](long kk) {
      int k = static_cast<int>(kk);
      for (int j = 0; j < g.ny; ++j) {
        long base = db.index(0, j, k);
        for (int i = 0; i < g.nx; ++i) {
          long idx = base + i;
          db.data[idx] = -(Ev.data[idx + up_u] - Ev.data[idx]) * idu +
                         (Eu.data[idx + up_v] - Eu.data[idx]) * idv;
        }
      }
    });
    fill_ghost_periodic(db);
  }
}

}  // namespace ctmhd
