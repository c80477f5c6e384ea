#include <cmath>
#include <random>

#include "doctest.h"
#include "grid.hpp"
#include "oracles.hpp"
#include "transforms.hpp"

using namespace ctmhd;

namespace {

const std::vector<TransformKind> kAllKinds = {
    TransformKind::kAreaToPoint,   TransformKind::kPointToArea, TransformKind::kVolumeToPoint,
    TransformKind::kPointToVolume, TransformKind::kLineToPoint, TransformKind::kPointToLine,
};

Rat coeff_of(const TransformTable& t, std::array<int, 3> cls) {
  for (const auto& term : t.terms)
    if (term.cls == cls) return term.coeff;
  throw std::runtime_error("class not in table");
}

}  // namespace

TEST_CASE("offset class member counts") {
  CHECK(offset_class_members({1, 0, 0}, 2).size() == 4);
  CHECK(offset_class_members({2, 1, 0}, 2).size() == 8);
  CHECK(offset_class_members({1, 1, 0}, 2).size() == 4);
  CHECK(offset_class_members({1, 0, 0}, 3).size() == 6);
  CHECK(offset_class_members({1, 1, 0}, 3).size() == 12);
  CHECK(offset_class_members({1, 1, 1}, 3).size() == 8);
  CHECK(offset_class_members({2, 1, 0}, 3).size() == 24);
  CHECK(offset_class_members({2, 1, 1}, 3).size() == 24);
  CHECK(offset_class_members({0, 0, 0}, 3).size() == 1);
}

TEST_CASE("sigma offset sums on constant fields count members") {
  GridConfig cfg;
  cfg.nx = cfg.ny = cfg.nz = 8;
  cfg.lx = cfg.ly = cfg.lz = 1.0;
  cfg.ghost = 3;
  Grid g = build_grid(cfg);
  Field3 f(g);
  f.fill(1.5);
  fill_ghost_periodic(f);
  CHECK(sigma_offset_sum(f, 4, 4, 4, {1, 0, 0}, 2, 0, 1) == doctest::Approx(4 * 1.5));
  CHECK(sigma_offset_sum(f, 4, 4, 4, {2, 1, 0}, 2, 0, 1) == doctest::Approx(8 * 1.5));
  CHECK(sigma_offset_sum(f, 4, 4, 4, {1, 0, 0}, 3) == doctest::Approx(6 * 1.5));
  CHECK_THROWS_AS(sigma_offset_sum(f, 4, 4, 4, {4, 0, 0}, 3), NumericError);
}

TEST_CASE("derived tables reproduce the printed fractions") {
  // the full comparison against every published fraction runs inside
  // derive_transform_table; here we assert it passes for all orders/kinds
  // and spot-check the values quoted with explicit provenance
  for (int order = 2; order <= 10; order += 2) {
    for (auto kind : kAllKinds) CHECK_NOTHROW(derive_transform_table(order, kind));
    CHECK_NOTHROW(derive_transform_table(order, TransformKind::kStaggeredBToVolume));
  }
  auto a2p4 = derive_transform_table(4, TransformKind::kAreaToPoint);
  CHECK(coeff_of(a2p4, {0, 0, 0}) == Rat(7, 6));
  CHECK(coeff_of(a2p4, {1, 0, 0}) == Rat(-1, 24));
  auto l2p6 = derive_transform_table(6, TransformKind::kLineToPoint);
  CHECK(coeff_of(l2p6, {0, 0, 0}) == Rat(1067, 960));
  CHECK(coeff_of(l2p6, {1, 0, 0}) == Rat(-29, 480));
  CHECK(coeff_of(l2p6, {2, 0, 0}) == Rat(3, 640));
  auto p2v8 = derive_transform_table(8, TransformKind::kPointToVolume);
  CHECK(coeff_of(p2v8, {0, 0, 0}) == Rat(34025, 48384));
  auto lp4 = derive_transform_table(4, TransformKind::kLineToPoint);
  CHECK(coeff_of(lp4, {0, 0, 0}) == Rat(13, 12));
  CHECK(coeff_of(lp4, {1, 0, 0}) == Rat(-1, 24));
}

TEST_CASE("constant preservation") {
  for (int order = 2; order <= 10; order += 2) {
    for (auto kind : kAllKinds) {
      const TransformTable& t = transform_table(order, kind);
      double row_sum = 0.0;
      for (const auto& term : t.terms)
        row_sum += term.weight * offset_class_members(term.cls, t.dims).size();
      CHECK(std::abs(row_sum - 1.0) < 1e-15);
    }
    const TransformTable& bt = transform_table(order, TransformKind::kStaggeredBToVolume);
    double row_sum = 0.0;
    for (const auto& term : bt.terms) row_sum += 2.0 * term.weight;
    CHECK(std::abs(row_sum - 1.0) < 1e-15);
  }
}

TEST_CASE("worked spot values") {
  // q = x^2 on a unit-spaced plane, order 4
  auto a2p = transform_table(4, TransformKind::kAreaToPoint);
  auto p2a = transform_table(4, TransformKind::kPointToArea);
  auto avg_x2 = [](int i) { return i * i + 1.0 / 12.0; };  // area average at offset i
  double point = apply_table_at(a2p, [&](const std::array<int, 3>& o) { return avg_x2(o[0]); });
  CHECK(point == doctest::Approx(0.0).epsilon(0).scale(1));
  double area =
      apply_table_at(p2a, [&](const std::array<int, 3>& o) { return double(o[0] * o[0]); });
  CHECK(area == doctest::Approx(1.0 / 12.0));

  auto v2p = transform_table(4, TransformKind::kVolumeToPoint);
  auto p2v = transform_table(4, TransformKind::kPointToVolume);
  double vp = apply_table_at(v2p, [&](const std::array<int, 3>& o) { return avg_x2(o[0]); });
  CHECK(std::abs(vp) < 1e-15);
  double pv =
      apply_table_at(p2v, [&](const std::array<int, 3>& o) { return double(o[0] * o[0]); });
  CHECK(pv == doctest::Approx(1.0 / 12.0));

  // line averages of x^2, order 6, centered at zero: exact zero
  auto l2p = transform_table(6, TransformKind::kLineToPoint);
  double lp = apply_table_at(l2p, [&](const std::array<int, 3>& o) { return avg_x2(o[0]); });
  CHECK(std::abs(lp) < 1e-14);
}

TEST_CASE("polynomial exactness of every table") {
  std::mt19937_64 rng(42);
  const double h = 0.37;  // non-unit spacing exercises the scaling claim
  for (int order = 2; order <= 10; order += 2) {
    const int deg = order - 1;
    const int radius = order / 2 - 1;
    CAPTURE(order);

    // 3D volume <-> point
    {
      auto poly = oracle::Poly3::random(deg, rng);
      auto volavg = [&](int a, int b, int c) {
        return poly.box_average((a - .5) * h, (a + .5) * h, (b - .5) * h, (b + .5) * h,
                                (c - .5) * h, (c + .5) * h);
      };
      const auto& v2p = transform_table(order, TransformKind::kVolumeToPoint);
      double got =
          apply_table_at(v2p, [&](const std::array<int, 3>& o) { return volavg(o[0], o[1], o[2]); });
      double want = poly.eval(0, 0, 0);
      CHECK(got == doctest::Approx(want).epsilon(1e-12));

      const auto& p2v = transform_table(order, TransformKind::kPointToVolume);
      double got2 = apply_table_at(
          p2v, [&](const std::array<int, 3>& o) { return poly.eval(o[0] * h, o[1] * h, o[2] * h); });
      CHECK(got2 == doctest::Approx(volavg(0, 0, 0)).epsilon(1e-12));
    }

    // 2D area <-> point on an x-normal face (coordinates y,z)
    {
      auto poly = oracle::Poly3::random(deg, rng);
      auto area = [&](int b, int c) {
        return poly.face_average_x(0.0, (b - .5) * h, (b + .5) * h, (c - .5) * h, (c + .5) * h);
      };
      const auto& a2p = transform_table(order, TransformKind::kAreaToPoint);
      double got =
          apply_table_at(a2p, [&](const std::array<int, 3>& o) { return area(o[0], o[1]); });
      CHECK(got == doctest::Approx(poly.eval(0, 0, 0)).epsilon(1e-12));
      const auto& p2a = transform_table(order, TransformKind::kPointToArea);
      double got2 = apply_table_at(
          p2a, [&](const std::array<int, 3>& o) { return poly.eval(0.0, o[0] * h, o[1] * h); });
      CHECK(got2 == doctest::Approx(area(0, 0)).epsilon(1e-12));
    }

    // 1D line <-> point
    {
      auto poly = oracle::Poly1::random(deg, rng);
      auto lavg = [&](int a) { return poly.average((a - .5) * h, (a + .5) * h); };
      const auto& l2p = transform_table(order, TransformKind::kLineToPoint);
      double got = apply_table_at(l2p, [&](const std::array<int, 3>& o) { return lavg(o[0]); });
      CHECK(got == doctest::Approx(poly.eval(0)).epsilon(1e-12));
      const auto& p2l = transform_table(order, TransformKind::kPointToLine);
      double got2 =
          apply_table_at(p2l, [&](const std::array<int, 3>& o) { return poly.eval(o[0] * h); });
      CHECK(got2 == doctest::Approx(lavg(0)).epsilon(1e-12));

      // round trip: averages -> points -> averages is exact on polynomials
      double rt = 0.0;
      for (const auto& term : p2l.terms)
        for (const auto& m : offset_class_members(term.cls, 1)) {
          double pt = apply_table_at(
              l2p, [&](const std::array<int, 3>& o) { return lavg(m[0] + o[0]); });
          rt += term.weight * pt;
        }
      CHECK(rt == doctest::Approx(lavg(0)).epsilon(1e-12));
    }

    // staggered interpolation along one axis
    {
      auto poly = oracle::Poly1::random(deg, rng);
      const auto& bt = transform_table(order, TransformKind::kStaggeredBToVolume);
      double got = 0.0;
      for (const auto& term : bt.terms) {
        double off = (2.0 * term.cls[0] - 1.0) / 2.0;
        got += term.weight * (poly.eval(off * h) + poly.eval(-off * h));
      }
      CHECK(got == doctest::Approx(poly.average(-h / 2, h / 2)).epsilon(1e-12));
    }
    (void)radius;
  }
}

TEST_CASE("staggered linear field reproduces cell centers exactly") {
  const auto& bt = transform_table(4, TransformKind::kStaggeredBToVolume);
  // faces carry b_x = x exactly; the volume average of x over cell i is x_i
  double xc = 1.7;
  double got = 0.0;
  for (const auto& term : bt.terms) {
    double off = (2.0 * term.cls[0] - 1.0) / 2.0;
    got += term.weight * ((xc + off) + (xc - off));
  }
  CHECK(got == doctest::Approx(xc).epsilon(1e-15));
}

TEST_CASE("field-level application matches the per-cell stencil") {
  GridConfig cfg;
  cfg.nx = 12;
  cfg.ny = 10;
  cfg.nz = 8;
  cfg.lx = cfg.ly = cfg.lz = 1.0;
  cfg.ghost = 4;
  Grid g = build_grid(cfg);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1, 1);
  Field3 f(g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) f(i, j, k) = U(rng);
  fill_ghost_periodic(f);
  const auto& t = transform_table(8, TransformKind::kVolumeToPoint);
  Field3 out;
  apply_cell_transform(f, out, t);
  for (int k : {0, 3, 7})
    for (int j : {0, 5})
      for (int i : {0, 4, 11}) {
        double want = apply_table_at(
            t, [&](const std::array<int, 3>& o) { return f(i + o[0], j + o[1], k + o[2]); });
        CHECK(out(i, j, k) == doctest::Approx(want).epsilon(1e-15));
      }
  const auto& ta = transform_table(6, TransformKind::kAreaToPoint);
  Field3 out2;
  apply_face_transform(f, out2, ta, 0);
  for (int k : {1, 6})
    for (int j : {2, 9})
      for (int i : {0, 5}) {
        double want = 0.0;
        for (const auto& term : ta.terms)
          want += term.weight * sigma_offset_sum(f, i, j, k, term.cls, 2, 1, 2);
        CHECK(out2(i, j, k) == doctest::Approx(want).epsilon(1e-15));
      }
}

TEST_CASE("convergence order of avg-to-point tables on a trigonometric field") {
  for (int order = 2; order <= 10; order += 2) {
    CAPTURE(order);
    std::vector<double> errs;
    std::vector<int> Ns = {8, 16, 32};
    for (int N : Ns) {
      GridConfig cfg;
      cfg.nx = cfg.ny = cfg.nz = N;
      cfg.lx = cfg.ly = cfg.lz = 2 * M_PI;
      cfg.ghost = 4;
      Grid g = build_grid(cfg);
      // volume averages of sin(x)cos(y)cos(z) are separable and analytic
      auto iavg = [&](double c, double d) { return (std::cos(c) - std::cos(c + d)) / d; };  // sin
      auto cavg = [&](double c, double d) { return (std::sin(c + d) - std::sin(c)) / d; };  // cos
      Field3 f(g);
      for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
          for (int i = 0; i < g.nx; ++i)
            f(i, j, k) = iavg(i * g.dx, g.dx) * cavg(j * g.dy, g.dy) * cavg(k * g.dz, g.dz);
      fill_ghost_periodic(f);
      Field3 pt;
      apply_cell_transform(f, pt, transform_table(order, TransformKind::kVolumeToPoint));
      double emax = 0.0;
      for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
          for (int i = 0; i < g.nx; ++i) {
            double want = std::sin(g.xc(i)) * std::cos(g.yc(j)) * std::cos(g.zc(k));
            emax = std::max(emax, std::abs(pt(i, j, k) - want));
          }
      errs.push_back(emax);
    }
    for (size_t r = 1; r < errs.size(); ++r) {
      double eoc = std::log(errs[r - 1] / errs[r]) / std::log(2.0);
      CHECK(eoc >= order - 0.2);
    }
  }
}

TEST_CASE("table dump prints exact fractions") {
  const auto& t = transform_table(4, TransformKind::kAreaToPoint);
  std::string s = t.dump_fractions();
  CHECK(s.find("7/6") != std::string::npos);
  CHECK(s.find("-1/24") != std::string::npos);
}
