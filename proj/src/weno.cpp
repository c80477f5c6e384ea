#include "weno.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ctmhd {

namespace {

// dense polynomial with rational coefficients, index = power
using RatPoly = std::vector<Rat>;

RatPoly poly_derivative(const RatPoly& p) {
  if (p.size() <= 1) return {Rat(0)};
  RatPoly d(p.size() - 1, Rat(0));
  for (size_t r = 1; r < p.size(); ++r) d[r - 1] = p[r] * Rat(static_cast<long long>(r));
  return d;
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  RatPoly c(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = c[i + j] + a[i] * b[j];
  return c;
}

Rat poly_integral_cell(const RatPoly& p) {
  // integral over [-1/2, 1/2]
  Rat s(0);
  for (size_t r = 0; r < p.size(); ++r) {
    Rat hi = Rat::pow(Rat(1, 2), static_cast<int>(r) + 1);
    Rat lo = Rat::pow(Rat(-1, 2), static_cast<int>(r) + 1);
    s = s + p[r] * (hi - lo) / Rat(static_cast<long long>(r) + 1);
  }
  return s;
}

Rat poly_eval(const RatPoly& p, const Rat& x) {
  Rat s(0);
  for (size_t r = p.size(); r-- > 0;) s = s * x + p[r];
  return s;
}

// average of x^r over the unit cell centered at integer c
Rat avg_monomial(int c, int r) {
  Rat hi = Rat(c) + Rat(1, 2);
  Rat lo = Rat(c) - Rat(1, 2);
  return (Rat::pow(hi, r + 1) - Rat::pow(lo, r + 1)) / Rat(r + 1);
}

// cardinal polynomials of the averages-interpolation problem on the given
// cells: phi[c](x) has average delta_{c c'} on each cell c'.
std::vector<RatPoly> cardinal_polynomials(const std::vector<int>& cells) {
  const size_t m = cells.size();
  std::vector<RatPoly> phi(m);
  for (size_t c = 0; c < m; ++c) {
    std::vector<std::vector<Rat>> A(m, std::vector<Rat>(m, Rat(0)));
    std::vector<Rat> rhs(m, Rat(0));
    for (size_t row = 0; row < m; ++row) {
      for (size_t r = 0; r < m; ++r) A[row][r] = avg_monomial(cells[row], static_cast<int>(r));
      rhs[row] = (row == c) ? Rat(1) : Rat(0);
    }
    phi[c] = rat_solve(A, rhs);
  }
  return phi;
}

}  // namespace

WenoScheme build_weno_scheme(int n, double eps, double p_exp) {
  if (n < 1 || n > 5) throw ConfigError("WENO substencil radius must be in 1..5");
  WenoScheme s;
  s.n = n;
  s.eps = eps;
  s.p_exp = p_exp;

  const Rat half(1, 2);
  const Rat mhalf(-1, 2);

  // substencil reconstructions and smoothness forms
  std::vector<std::vector<Rat>> rec_r(n + 1), rec_l(n + 1);
  s.is_form_exact.resize(n + 1);
  for (int m = 0; m <= n; ++m) {
    std::vector<int> cells(n + 1);
    for (int j = 0; j <= n; ++j) cells[j] = m - n + j;
    auto phi = cardinal_polynomials(cells);
    rec_r[m].resize(n + 1);
    rec_l[m].resize(n + 1);
    for (int j = 0; j <= n; ++j) {
      rec_r[m][j] = poly_eval(phi[j], half);
      rec_l[m][j] = poly_eval(phi[j], mhalf);
    }
    // IS quadratic form: sum over derivative levels l of
    // integral over the center cell of phi_a^(l) phi_b^(l)
    auto& Q = s.is_form_exact[m];
    Q.assign(n + 1, std::vector<Rat>(n + 1, Rat(0)));
    std::vector<RatPoly> deriv(n + 1);
    for (int j = 0; j <= n; ++j) deriv[j] = phi[j];
    for (int l = 1; l <= n; ++l) {
      for (int j = 0; j <= n; ++j) deriv[j] = poly_derivative(deriv[j]);
      for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b)
          Q[a][b] = Q[a][b] + poly_integral_cell(poly_mul(deriv[a], deriv[b]));
    }
  }

  // optimal polynomial on the full window
  std::vector<int> all_cells(2 * n + 1);
  for (int w = -n; w <= n; ++w) all_cells[w + n] = w;
  auto phi_opt = cardinal_polynomials(all_cells);
  std::vector<Rat> opt_r(2 * n + 1), opt_l(2 * n + 1);
  for (int w = 0; w < 2 * n + 1; ++w) {
    opt_r[w] = poly_eval(phi_opt[w], half);
    opt_l[w] = poly_eval(phi_opt[w], mhalf);
  }

  // matching conditions: sum_m d_m P^m(+-1/2) = P_opt(+-1/2) for all inputs
  auto solve_d = [&](const std::vector<std::vector<Rat>>& rec,
                     const std::vector<Rat>& opt) {
    std::vector<std::vector<Rat>> A(2 * n + 1, std::vector<Rat>(n + 1, Rat(0)));
    for (int m = 0; m <= n; ++m)
      for (int j = 0; j <= n; ++j) A[m + j][m] = A[m + j][m] + rec[m][j];
    return rat_solve(A, opt);
  };
  s.d_right_exact = solve_d(rec_r, opt_r);
  auto d_left_exact = solve_d(rec_l, opt_l);
  for (int m = 0; m <= n; ++m) {
    if (s.d_right_exact[m].to_double() <= 0 || d_left_exact[m].to_double() <= 0)
      throw NumericError("WENO optimal weights not positive");
  }

  s.rec_right_exact = rec_r;
  s.rec_right.resize(n + 1);
  s.is_form.resize(n + 1);
  s.d_right.resize(n + 1);
  s.d_left.resize(n + 1);
  for (int m = 0; m <= n; ++m) {
    s.d_right[m] = s.d_right_exact[m].to_double();
    s.d_left[m] = d_left_exact[m].to_double();
    s.rec_right[m].resize(n + 1);
    for (int j = 0; j <= n; ++j) s.rec_right[m][j] = rec_r[m][j].to_double();
    s.is_form[m].assign(n + 1, std::vector<double>(n + 1, 0.0));
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b) s.is_form[m][a][b] = s.is_form_exact[m][a][b].to_double();
  }
  return s;
}

void smoothness_indicators(const WenoScheme& s, const double* window, double* is_out) {
  const int n = s.n;
  for (int m = 0; m <= n; ++m) {
    const auto& Q = s.is_form[m];
    double acc = 0.0;
    for (int a = 0; a <= n; ++a) {
      double qa = window[m + a];
      double row = 0.0;
      for (int b = 0; b <= n; ++b) row += Q[a][b] * window[m + b];
      acc += qa * row;
    }
    is_out[m] = acc;
  }
}

double weno_reconstruct_right(const WenoScheme& s, const double* window) {
  const int n = s.n;
  double is[6];
  smoothness_indicators(s, window, is);
  double alpha[6];
  double alpha_sum = 0.0;
  for (int m = 0; m <= n; ++m) {
    double base = s.eps + is[m];
    double denom;
    if (s.p_exp == 2.0)
      denom = base * base;
    else if (s.p_exp == 1.0)
      denom = base;
    else
      denom = std::pow(base, s.p_exp);
    alpha[m] = s.d_right[m] / denom;
    alpha_sum += alpha[m];
  }
  double val = 0.0;
  for (int m = 0; m <= n; ++m) {
    double pm = 0.0;
    for (int j = 0; j <= n; ++j) pm += s.rec_right[m][j] * window[m + j];
    val += (alpha[m] / alpha_sum) * pm;
  }
  return val;
}

void weno_reconstruct(const WenoScheme& s, const double* window, double* left, double* right) {
  const int n = s.n;
  *right = weno_reconstruct_right(s, window);
  double reversed[11];
  for (int w = 0; w < 2 * n + 1; ++w) reversed[w] = window[2 * n - w];
  *left = weno_reconstruct_right(s, reversed);
}

std::string WenoScheme::dump_fractions() const {
  std::ostringstream os;
  os << "weno n=" << n << " (order " << order() << ")\n";
  os << "  d_right:";
  for (const auto& d : d_right_exact) os << " " << d.str();
  os << "\n";
  for (int m = 0; m <= n; ++m) {
    os << "  P^" << m << "(+1/2):";
    for (const auto& c : rec_right_exact[m]) os << " " << c.str();
    os << "\n";
  }
  for (int m = 0; m <= n; ++m) {
    os << "  IS^" << m << " form:";
    for (int a = 0; a <= n; ++a) {
      os << " [";
      for (int b = 0; b <= n; ++b) os << (b ? " " : "") << is_form_exact[m][a][b].str();
      os << "]";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace ctmhd
