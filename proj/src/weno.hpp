#ifndef CTMHD_WENO_HPP_
#define CTMHD_WENO_HPP_

#include <string>
#include <vector>

#include "rational.hpp"

namespace ctmhd {

//! One-dimensional WENO reconstruction of interface values from 2n+1 cell
//! averages (odd orders 3..11). All coefficients are derived from the
//! interpolation and matching conditions by exact rational solves.
struct WenoScheme {
  int n = 2;          // substencil radius, order = 2n+1
  double eps = 1e-6;  // weight regularization
  double p_exp = 2;   // weight exponent

  // substencil m covers window indices m..m+n (m = 0 is left-most);
  // rec_right[m][j] reconstructs P^m at x_i + dx/2 from those averages.
  std::vector<std::vector<double>> rec_right;
  std::vector<double> d_right;  // optimal weights at the right interface
  std::vector<double> d_left;   // mirrored set
  // smoothness indicator quadratic forms, one (n+1)x(n+1) matrix per substencil
  std::vector<std::vector<std::vector<double>>> is_form;

  // exact copies kept for the table dump and the derivation tests
  std::vector<Rat> d_right_exact;
  std::vector<std::vector<Rat>> rec_right_exact;
  std::vector<std::vector<std::vector<Rat>>> is_form_exact;

  int order() const { return 2 * n + 1; }
  std::string dump_fractions() const;
};

WenoScheme build_weno_scheme(int n, double eps = 1e-6, double p_exp = 2);

//! IS_m values for one window of 2n+1 averages.
void smoothness_indicators(const WenoScheme& s, const double* window, double* is_out);

//! Value of the weighted reconstruction at x_i + dx/2 (right interface).
double weno_reconstruct_right(const WenoScheme& s, const double* window);

//! Both interface values; the left value is the right value of the reversed
//! window, which makes the mirror-symmetry property exact.
void weno_reconstruct(const WenoScheme& s, const double* window, double* left, double* right);

}  // namespace ctmhd

#endif  // CTMHD_WENO_HPP_
