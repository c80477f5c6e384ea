#include "grid.hpp"

#include <cmath>
#include <string>

namespace ctmhd {

Grid build_grid(const GridConfig& cfg) {
  auto bad = [](const std::string& what) { throw ConfigError("build_grid: " + what); };
  if (cfg.nx <= 0 || cfg.ny <= 0 || cfg.nz <= 0) bad("cell counts must be positive");
  if (!(cfg.lx > 0) || !(cfg.ly > 0) || !(cfg.lz > 0)) bad("domain lengths must be positive");
  if (cfg.ghost < 0) bad("ghost width must be non-negative");
  if (cfg.nx < 2 * cfg.ghost || cfg.ny < 2 * cfg.ghost || cfg.nz < 2 * cfg.ghost)
    bad("N must be at least twice the ghost width");
  Grid g;
  g.nx = cfg.nx;
  g.ny = cfg.ny;
  g.nz = cfg.nz;
  g.lx = cfg.lx;
  g.ly = cfg.ly;
  g.lz = cfg.lz;
  g.x0 = cfg.x0;
  g.y0 = cfg.y0;
  g.z0 = cfg.z0;
  g.ghost = cfg.ghost;
  g.dx = cfg.lx / cfg.nx;
  g.dy = cfg.ly / cfg.ny;
  g.dz = cfg.lz / cfg.nz;
  return g;
}

void fill_ghost_periodic(Field3& f) {
  const int ng = f.ng;
  if (ng == 0) return;
  const int nx = f.nx, ny = f.ny, nz = f.nz;
  // x ghosts first (interior j,k), then y over full x, then z over full x,y.
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j) {
      for (int i = -ng; i < 0; ++i) f(i, j, k) = f(i + nx, j, k);
      for (int i = nx; i < nx + ng; ++i) f(i, j, k) = f(i - nx, j, k);
    }
  for (int k = 0; k < nz; ++k)
    for (int j = -ng; j < 0; ++j)
      for (int i = -ng; i < nx + ng; ++i) f(i, j, k) = f(i, j + ny, k);
  for (int k = 0; k < nz; ++k)
    for (int j = ny; j < ny + ng; ++j)
      for (int i = -ng; i < nx + ng; ++i) f(i, j, k) = f(i, j - ny, k);
  for (int k = -ng; k < 0; ++k)
    for (int j = -ng; j < ny + ng; ++j)
      for (int i = -ng; i < nx + ng; ++i) f(i, j, k) = f(i, j, k + nz);
  for (int k = nz; k < nz + ng; ++k)
    for (int j = -ng; j < ny + ng; ++j)
      for (int i = -ng; i < nx + ng; ++i) f(i, j, k) = f(i, j, k - nz);
}

void fill_ghost_periodic(StaggeredField& f) {
  for (auto& c : f.comp) fill_ghost_periodic(c);
}

void fill_ghost_periodic(EdgeField& f) {
  for (auto& c : f.comp) fill_ghost_periodic(c);
}

Field3 discrete_divergence_b(const StaggeredField& b, const Grid& g) {
  Field3 div(g);
  const Field3& bx = b[0];
  const Field3& by = b[1];
  const Field3& bz = b[2];
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        // slot i holds the face at i-1/2; the right face of cell i is slot i+1
        double duxdx = (bx(i + 1, j, k) - bx(i, j, k)) / g.dx;
        double duydy = (by(i, j + 1, k) - by(i, j, k)) / g.dy;
        double duzdz = (bz(i, j, k + 1) - bz(i, j, k)) / g.dz;
        div(i, j, k) = duxdx + duydy + duzdz;
      }
  return div;
}

}  // namespace ctmhd
