#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "weno.hpp"

using namespace ctmhd;

TEST_CASE("derived weights and substencil values match the classic forms") {
  auto w5 = build_weno_scheme(2);
  CHECK(w5.d_right_exact[0] == Rat(1, 10));
  CHECK(w5.d_right_exact[1] == Rat(6, 10));
  CHECK(w5.d_right_exact[2] == Rat(3, 10));
  // mirrored set at the left interface
  CHECK(w5.d_left[0] == doctest::Approx(0.3));
  CHECK(w5.d_left[1] == doctest::Approx(0.6));
  CHECK(w5.d_left[2] == doctest::Approx(0.1));

  auto w3 = build_weno_scheme(1);
  // P^0 at the right interface from cells (i-1, i); P^1 from (i, i+1)
  CHECK(w3.rec_right_exact[0][0] == Rat(-1, 2));
  CHECK(w3.rec_right_exact[0][1] == Rat(3, 2));
  CHECK(w3.rec_right_exact[1][0] == Rat(1, 2));
  CHECK(w3.rec_right_exact[1][1] == Rat(1, 2));

  for (int n = 1; n <= 5; ++n) {
    auto s = build_weno_scheme(n);
    Rat sum(0);
    for (const auto& d : s.d_right_exact) sum = sum + d;
    CHECK(sum == Rat(1));
    double dsum = 0;
    for (double d : s.d_left) dsum += d;
    CHECK(dsum == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK_THROWS_AS(build_weno_scheme(0), ConfigError);
  CHECK_THROWS_AS(build_weno_scheme(6), ConfigError);
}

TEST_CASE("smoothness indicators") {
  auto s = build_weno_scheme(2);

  SUBCASE("vanish on constants and are shift invariant") {
    double win[5] = {4.0, 4.0, 4.0, 4.0, 4.0};
    double is[3];
    smoothness_indicators(s, win, is);
    for (int m = 0; m < 3; ++m) CHECK(std::abs(is[m]) < 1e-14);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1, 1);
    double a[5], b[5], ia[3], ib[3];
    for (int i = 0; i < 5; ++i) {
      a[i] = U(rng);
      b[i] = a[i] + 7.5;
    }
    smoothness_indicators(s, a, ia);
    smoothness_indicators(s, b, ib);
    for (int m = 0; m < 3; ++m) CHECK(ia[m] == doctest::Approx(ib[m]).epsilon(1e-10));
  }

  SUBCASE("linear data gives unit indicators") {
    double win[5] = {-2, -1, 0, 1, 2};  // cell averages of q(x)=x
    double is[3];
    smoothness_indicators(s, win, is);
    for (int m = 0; m < 3; ++m) CHECK(is[m] == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("quadratic homogeneity") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> U(-1, 1);
    double a[5], b[5], ia[3], ib[3];
    for (int i = 0; i < 5; ++i) {
      a[i] = U(rng);
      b[i] = 2.0 * a[i];
    }
    smoothness_indicators(s, a, ia);
    smoothness_indicators(s, b, ib);
    for (int m = 0; m < 3; ++m) CHECK(ib[m] == doctest::Approx(4.0 * ia[m]).epsilon(1e-13));
  }

  SUBCASE("n=2 matches the Jiang-Shu quadratic forms") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int trial = 0; trial < 50; ++trial) {
      double w[5], is[3];
      for (double& v : w) v = U(rng);
      smoothness_indicators(s, w, is);
      auto sq = [](double v) { return v * v; };
      double j0 = 13.0 / 12.0 * sq(w[0] - 2 * w[1] + w[2]) + 0.25 * sq(w[0] - 4 * w[1] + 3 * w[2]);
      double j1 = 13.0 / 12.0 * sq(w[1] - 2 * w[2] + w[3]) + 0.25 * sq(w[1] - w[3]);
      double j2 = 13.0 / 12.0 * sq(w[2] - 2 * w[3] + w[4]) + 0.25 * sq(3 * w[2] - 4 * w[3] + w[4]);
      CHECK(is[0] == doctest::Approx(j0).epsilon(1e-12));
      CHECK(is[1] == doctest::Approx(j1).epsilon(1e-12));
      CHECK(is[2] == doctest::Approx(j2).epsilon(1e-12));
    }
  }

  SUBCASE("indicators are non-negative") {
    for (int n = 1; n <= 5; ++n) {
      auto sc = build_weno_scheme(n);
      std::mt19937_64 rng(14 + n);
      std::uniform_real_distribution<double> U(-1, 1);
      double w[11], is[6];
      for (int trial = 0; trial < 100; ++trial) {
        for (int i = 0; i < 2 * n + 1; ++i) w[i] = U(rng);
        smoothness_indicators(sc, w, is);
        for (int m = 0; m <= n; ++m) CHECK(is[m] >= -1e-14);
      }
    }
  }
}

TEST_CASE("reconstruction basics") {
  auto s = build_weno_scheme(2);

  SUBCASE("constants reproduce exactly") {
    double win[5] = {2.5, 2.5, 2.5, 2.5, 2.5};
    double l, r;
    weno_reconstruct(s, win, &l, &r);
    CHECK(l == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(r == doctest::Approx(2.5).epsilon(1e-15));
  }

  SUBCASE("linear data is exact") {
    double win[5] = {-2, -1, 0, 1, 2};
    double l, r;
    weno_reconstruct(s, win, &l, &r);
    CHECK(r == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(l == doctest::Approx(-0.5).epsilon(1e-14));
  }

  SUBCASE("mirror symmetry is exact") {
    for (int n = 1; n <= 5; ++n) {
      auto sc = build_weno_scheme(n);
      std::mt19937_64 rng(20 + n);
      std::uniform_real_distribution<double> U(-1, 1);
      for (int trial = 0; trial < 50; ++trial) {
        double w[11], rev[11];
        for (int i = 0; i < 2 * n + 1; ++i) w[i] = U(rng);
        for (int i = 0; i < 2 * n + 1; ++i) rev[i] = w[2 * n - i];
        double l1, r1, l2, r2;
        weno_reconstruct(sc, w, &l1, &r1);
        weno_reconstruct(sc, rev, &l2, &r2);
        CHECK(l1 == r2);
        CHECK(r1 == l2);
      }
    }
  }

  SUBCASE("weights are convex") {
    for (int n = 1; n <= 5; ++n) {
      auto sc = build_weno_scheme(n);
      std::mt19937_64 rng(30 + n);
      std::uniform_real_distribution<double> U(-1, 1);
      for (int trial = 0; trial < 50; ++trial) {
        double w[11], is[6];
        for (int i = 0; i < 2 * n + 1; ++i) w[i] = U(rng);
        smoothness_indicators(sc, w, is);
        double alpha[6], sum = 0;
        for (int m = 0; m <= n; ++m) {
          alpha[m] = sc.d_right[m] / ((sc.eps + is[m]) * (sc.eps + is[m]));
          sum += alpha[m];
        }
        double wsum = 0;
        for (int m = 0; m <= n; ++m) {
          double wm = alpha[m] / sum;
          CHECK(wm >= 0.0);
          CHECK(wm <= 1.0);
          wsum += wm;
        }
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
      }
    }
  }

  SUBCASE("step data stays within the window hull") {
    double win[5] = {0, 0, 0, 1, 1};
    double l, r;
    weno_reconstruct(s, win, &l, &r);
    CHECK(l >= -1e-12);
    CHECK(l <= 1.0 + 1e-12);
    CHECK(r >= -1e-12);
    CHECK(r <= 1.0 + 1e-12);
  }
}

TEST_CASE("reconstruction is exact for substencil-degree polynomials") {
  std::mt19937_64 rng(99);
  for (int n = 1; n <= 5; ++n) {
    auto sc = build_weno_scheme(n);
    auto poly = oracle::Poly1::random(n, rng);
    double w[11];
    for (int m = -n; m <= n; ++m) w[m + n] = poly.average(m - 0.5, m + 0.5);
    double l, r;
    weno_reconstruct(sc, w, &l, &r);
    CHECK(r == doctest::Approx(poly.eval(0.5)).epsilon(1e-12));
    CHECK(l == doctest::Approx(poly.eval(-0.5)).epsilon(1e-12));
  }
}

TEST_CASE("x^4 window converges at fifth order") {
  auto s = build_weno_scheme(2, 1e-12, 1.0);
  // spot check the quoted window at dx = 1: averages of x^4 are m^4+m^2/2+1/80
  {
    double win[5];
    for (int m = -2; m <= 2; ++m) win[m + 2] = m * m * m * m + m * m / 2.0 + 1.0 / 80.0;
    CHECK(win[2] == doctest::Approx(0.0125).epsilon(1e-14));
    CHECK(win[3] == doctest::Approx(1.5125).epsilon(1e-14));
    CHECK(win[4] == doctest::Approx(18.0125).epsilon(1e-14));
  }
  std::vector<double> errs;
  std::vector<double> hs = {0.25, 0.125, 0.0625, 0.03125};
  for (double h : hs) {
    double h4 = h * h * h * h;
    double win[5];
    for (int m = -2; m <= 2; ++m) win[m + 2] = h4 * (std::pow(m, 4) + m * m / 2.0 + 1.0 / 80.0);
    double r = weno_reconstruct_right(s, win);
    errs.push_back(std::abs(r - std::pow(h / 2, 4)));
  }
  double slope = std::log(errs[errs.size() - 2] / errs.back()) / std::log(2.0);
  CHECK(slope >= 4.7);
}

TEST_CASE("order of accuracy on sin(x)") {
  for (int n = 1; n <= 5; ++n) {
    CAPTURE(n);
    auto sc = build_weno_scheme(n, 1e-12, 1.0);
    std::vector<double> errs;
    for (int N : {16, 32, 64}) {
      double h = 2 * M_PI / N;
      double emax = 0.0;
      for (int i = 0; i < N; ++i) {
        double xc = (i + 0.5) * h;
        double w[11];
        for (int m = -n; m <= n; ++m) {
          double a = xc + (m - 0.5) * h, b = xc + (m + 0.5) * h;
          w[m + n] = (std::cos(a) - std::cos(b)) / h;
        }
        double r = weno_reconstruct_right(sc, w);
        emax = std::max(emax, std::abs(r - std::sin(xc + 0.5 * h)));
      }
      errs.push_back(emax);
    }
    for (size_t r = 1; r < errs.size(); ++r) {
      double eoc = std::log(errs[r - 1] / errs[r]) / std::log(2.0);
      if (errs[r] > 1e-14)  // order 11 reaches round-off at N=64
        CHECK(eoc >= 2 * n + 1 - 0.3);
    }
  }
}

TEST_CASE("table dump lists weights as fractions") {
  auto s = build_weno_scheme(2);
  std::string dump = s.dump_fractions();
  CHECK(dump.find("1/10") != std::string::npos);
  CHECK(dump.find("3/10") != std::string::npos);
}
