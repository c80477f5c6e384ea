#ifndef CTMHD_GRID_HPP_
#define CTMHD_GRID_HPP_

#include <array>
#include <cstring>
#include <vector>

#include "common.hpp"

namespace ctmhd {

//! Uniform periodic Cartesian lattice. Cell (i,j,k) is centered at
//! origin + ((i+1/2)dx, (j+1/2)dy, (k+1/2)dz); the face normal to x with
//! slot index i sits at x_i - dx/2, edges follow the same slot convention.
struct Grid {
  int nx = 0, ny = 0, nz = 0;
  double lx = 0, ly = 0, lz = 0;
  double x0 = 0, y0 = 0, z0 = 0;
  double dx = 0, dy = 0, dz = 0;
  int ghost = 0;

  int n(int dir) const { return dir == 0 ? nx : dir == 1 ? ny : nz; }
  double delta(int dir) const { return dir == 0 ? dx : dir == 1 ? dy : dz; }
  double min_delta() const { return std::min(dx, std::min(dy, dz)); }
  double cell_volume() const { return dx * dy * dz; }
  long cell_count() const { return static_cast<long>(nx) * ny * nz; }

  double xc(int i) const { return x0 + (i + 0.5) * dx; }
  double yc(int j) const { return y0 + (j + 0.5) * dy; }
  double zc(int k) const { return z0 + (k + 0.5) * dz; }
  //! Coordinate of face slot i in direction dir (cell center minus half spacing).
  double face_coord(int dir, int idx) const {
    return dir == 0 ? x0 + idx * dx : dir == 1 ? y0 + idx * dy : z0 + idx * dz;
  }

  bool spacings_equal(double tol = 1e-12) const {
    double d = min_delta();
    return std::abs(dx - dy) <= tol * d && std::abs(dx - dz) <= tol * d;
  }
};

struct GridConfig {
  int nx = 0, ny = 0, nz = 0;
  double lx = 0, ly = 0, lz = 0;
  double x0 = 0, y0 = 0, z0 = 0;
  int ghost = 0;
};

Grid build_grid(const GridConfig& cfg);

//! One scalar per cell, interior + ghost shells, x index fastest.
//! Also used for face/edge lattices: slot index i then refers to the face
//! (i-1/2) or edge through it; periodic ghost fill is identical.
struct Field3 {
  int nx = 0, ny = 0, nz = 0, ng = 0;
  int sx = 0, sy = 0;  // strides: idx = (k+ng)*sy*sx? see index()
  std::vector<double> data;

  Field3() = default;
  Field3(int nx_, int ny_, int nz_, int ng_) { resize(nx_, ny_, nz_, ng_); }
  explicit Field3(const Grid& g) { resize(g.nx, g.ny, g.nz, g.ghost); }

  void resize(int nx_, int ny_, int nz_, int ng_) {
    nx = nx_;
    ny = ny_;
    nz = nz_;
    ng = ng_;
    sx = nx + 2 * ng;
    sy = ny + 2 * ng;
    data.assign(static_cast<size_t>(sx) * sy * (nz + 2 * ng), 0.0);
  }

  long index(int i, int j, int k) const {
    return (static_cast<long>(k + ng) * sy + (j + ng)) * sx + (i + ng);
  }
  double& operator()(int i, int j, int k) { return data[index(i, j, k)]; }
  double operator()(int i, int j, int k) const { return data[index(i, j, k)]; }

  void fill(double v) { std::fill(data.begin(), data.end(), v); }

  Field3& operator+=(const Field3& o) {
    for (size_t i = 0; i < data.size(); ++i) data[i] += o.data[i];
    return *this;
  }
  Field3& axpy(double a, const Field3& o) {
    for (size_t i = 0; i < data.size(); ++i) data[i] += a * o.data[i];
    return *this;
  }
  Field3& operator*=(double a) {
    for (double& v : data) v *= a;
    return *this;
  }
};

//! Staggered vector field: component n lives on faces normal to n,
//! slot index i <-> face at i-1/2 along its own direction.
struct StaggeredField {
  std::array<Field3, 3> comp;

  StaggeredField() = default;
  explicit StaggeredField(const Grid& g) {
    for (auto& c : comp) c.resize(g.nx, g.ny, g.nz, g.ghost);
  }
  Field3& operator[](int d) { return comp[d]; }
  const Field3& operator[](int d) const { return comp[d]; }
};

//! Line-averaged values on cell edges; component n is the average along n
//! of the field on the edge through slot (i,j,k): e.g. the z component sits
//! on the edge x_{i-1/2}, y_{j-1/2}, z in cell k.
struct EdgeField {
  std::array<Field3, 3> comp;

  EdgeField() = default;
  explicit EdgeField(const Grid& g) {
    for (auto& c : comp) c.resize(g.nx, g.ny, g.nz, g.ghost);
  }
  Field3& operator[](int d) { return comp[d]; }
  const Field3& operator[](int d) const { return comp[d]; }
};

//! Copy the periodic interior image into every ghost slot, bit-exactly.
void fill_ghost_periodic(Field3& f);
void fill_ghost_periodic(StaggeredField& f);
void fill_ghost_periodic(EdgeField& f);

//! Face-difference divergence of an area-averaged staggered field,
//! the quantity conserved by the constrained-transport update.
Field3 discrete_divergence_b(const StaggeredField& b, const Grid& g);

}  // namespace ctmhd

#endif  // CTMHD_GRID_HPP_
