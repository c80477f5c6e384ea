#ifndef CTMHD_RATIONAL_HPP_
#define CTMHD_RATIONAL_HPP_

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "common.hpp"

namespace ctmhd {

//! Exact rational on 128-bit integers, used to derive transformation and WENO
//! coefficient tables and to compare them with the printed fractions.
//! All listed stencils stay far below the 128-bit range after gcd reduction.
struct Rat {
  __int128 num = 0;
  __int128 den = 1;

  Rat() = default;
  Rat(long long n) : num(n), den(1) {}
  Rat(long long n, long long d) : num(n), den(d) { reduce(); }

  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void reduce() {
    if (den == 0) throw NumericError("rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    Rat r;
    r.num = a.num * b.den + b.num * a.den;
    r.den = a.den * b.den;
    r.reduce();
    return r;
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    Rat r;
    r.num = a.num * b.den - b.num * a.den;
    r.den = a.den * b.den;
    r.reduce();
    return r;
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    Rat r;
    r.num = a.num * b.num;
    r.den = a.den * b.den;
    r.reduce();
    return r;
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) throw NumericError("rational: division by zero");
    Rat r;
    r.num = a.num * b.den;
    r.den = a.den * b.num;
    r.reduce();
    return r;
  }
  Rat operator-() const {
    Rat r = *this;
    r.num = -r.num;
    return r;
  }
  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }

  bool is_zero() const { return num == 0; }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string str() const {
    auto i128s = [](__int128 v) {
      if (v == 0) return std::string("0");
      bool neg = v < 0;
      if (neg) v = -v;
      std::string s;
      while (v) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
      }
      if (neg) s.insert(s.begin(), '-');
      return s;
    };
    if (den == 1) return i128s(num);
    return i128s(num) + "/" + i128s(den);
  }

  //! x^k for k >= 0.
  static Rat pow(const Rat& x, int k) {
    Rat r(1);
    for (int i = 0; i < k; ++i) r = r * x;
    return r;
  }
};

//! Solve A x = rhs by Gauss elimination with exact rationals.
//! A may have more rows than columns; extra rows must be consistent
//! (they are checked exactly) which guards the over-determined matching
//! systems appearing in the WENO optimal-weight derivation.
inline std::vector<Rat> rat_solve(std::vector<std::vector<Rat>> A, std::vector<Rat> rhs) {
  const size_t rows = A.size();
  const size_t cols = rows ? A[0].size() : 0;
  if (rhs.size() != rows) throw NumericError("rat_solve: shape mismatch");
  size_t r = 0;
  std::vector<size_t> pivot_row(cols, SIZE_MAX);
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = SIZE_MAX;
    for (size_t i = r; i < rows; ++i)
      if (!A[i][c].is_zero()) {
        p = i;
        break;
      }
    if (p == SIZE_MAX) continue;
    std::swap(A[p], A[r]);
    std::swap(rhs[p], rhs[r]);
    Rat inv = Rat(1) / A[r][c];
    for (size_t j = c; j < cols; ++j) A[r][j] = A[r][j] * inv;
    rhs[r] = rhs[r] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c].is_zero()) continue;
      Rat f = A[i][c];
      for (size_t j = c; j < cols; ++j) A[i][j] = A[i][j] - f * A[r][j];
      rhs[i] = rhs[i] - f * rhs[r];
    }
    pivot_row[c] = r;
    ++r;
  }
  // leftover rows must be 0 = 0
  for (size_t i = r; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j)
      if (!A[i][j].is_zero()) throw NumericError("rat_solve: inconsistent system");
    if (!rhs[i].is_zero()) throw NumericError("rat_solve: inconsistent system");
  }
  std::vector<Rat> x(cols, Rat(0));
  for (size_t c = 0; c < cols; ++c) {
    if (pivot_row[c] == SIZE_MAX) throw NumericError("rat_solve: singular system");
    x[c] = rhs[pivot_row[c]];
  }
  return x;
}

}  // namespace ctmhd

#endif  // CTMHD_RATIONAL_HPP_
