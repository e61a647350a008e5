#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sgharm/rational.hpp"
#include "sgharm/word.hpp"

namespace sgharm {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Harmonic extension matrices of the N-vertex gasket and the induced
/// action on harmonic functions modulo constants.
///
/// full[i] maps boundary values on V_0 to values on the subcell F_i(V_0).
/// reduced[i] is the same map on the quotient by constants, written in the
/// basis f_k = (indicator of vertex k) mod constants, k = 0..N-2; in that
/// basis the quotient projection of boundary values v is simply
/// (v_0 - v_{N-1}, ..., v_{N-2} - v_{N-1}).
///
/// gram is the boundary energy inner product in the same basis, so all
/// operator norms below are taken in the energy Hilbert space.
struct ExtensionFamily {
  int alphabet_size = kMinAlphabet;
  std::vector<Eigen::MatrixXd> full;
  std::vector<Eigen::MatrixXd> reduced;
  std::vector<Eigen::MatrixXd> reduced_inv;
  Eigen::MatrixXd gram;

  // gram = L L^T; cached for energy norms
  Eigen::MatrixXd chol_lt;      // L^T
  Eigen::MatrixXd chol_lt_inv;  // (L^T)^{-1}

  std::vector<RationalMatrix> full_exact;
  std::vector<RationalMatrix> reduced_exact;
  std::vector<RationalMatrix> reduced_inv_exact;
  RationalMatrix gram_exact;
};

/// Builds the family for 3 <= N <= 10.
ExtensionFamily build_family(int alphabet_size);

/// Quotient projection of boundary values: v -> (v_0 - v_{N-1}, ...).
Eigen::VectorXd project_boundary(const Eigen::VectorXd& values);

/// Operator norm of M on the quotient equipped with the energy inner
/// product: sqrt of the top eigenvalue of G^{-1} M^T G M, computed through
/// the Cholesky-symmetrized form.
double energy_norm(const ExtensionFamily& fam, const Eigen::MatrixXd& m);

/// Energy norm of a quotient vector: sqrt(x^T G x).
double energy_norm(const ExtensionFamily& fam, const Eigen::VectorXd& x);

/// Largest |eigenvalue| of M.
double spectral_radius(const Eigen::MatrixXd& m);

/// Inverse extension product along a word. With the cell-restriction
/// convention A_w = A_{w_m} ... A_{w_1} (boundary values to values on the
/// cell F_w(V_0)), the inverse is A_w^{-1} = A_{w_1}^{-1} ... A_{w_m}^{-1},
/// which is the matrix stored here.
struct WordMatrix {
  Word word;
  Eigen::MatrixXd matrix;
  double energy_norm = 1.0;
  double spectral_radius = 1.0;
};

WordMatrix word_matrix(const ExtensionFamily& fam, const Word& w);

/// Applies the inverse product of the first n letters to a quotient vector
/// by sequential matrix-vector products (right to left). For long words
/// this is much better conditioned than forming the matrix product first.
Eigen::VectorXd apply_inverse_product(const ExtensionFamily& fam, const Word& w, std::size_t n,
                                      Eigen::VectorXd x);

/// Energy norms of the inverse products of all prefixes of w up to length n,
/// accumulated on (N+2)-normalized factors so arbitrarily long words do not
/// overflow. Entry k-1 holds ||A^{-1} over the length-k prefix|| / (N+2)^k.
std::vector<double> normalized_prefix_inv_norms(const ExtensionFamily& fam, const Word& w,
                                                std::size_t n);

/// Spectrum verification against the closed forms
/// sigma(A_i)      = {1, N/(N+2), 1/(N+2)}   with multiplicities 1, 1, N-2
/// sigma(A~_i^-1)  = {(N+2)/N, N+2}          with multiplicities 1, N-2.
struct EigencheckReport {
  double max_deviation_full = 0.0;
  double max_deviation_reduced_inv = 0.0;
  double max_norm_deviation = 0.0;       // | ||A~_i^-1|| - (N+2) |
  double max_selfadjoint_deviation = 0.0;  // || G^-1 M^T G - M || per reduced inverse
  double tolerance = 1e-10;
  bool pass = false;
};

EigencheckReport eigencheck(const ExtensionFamily& fam, double tolerance = 1e-10);

/// Per-letter contraction improvement over blocks:
///   beta_norm = max over (N-1)-blocks w of (||A_w^{-1}||_E / (N+2)^{N-1})^{1/(N-1)}
///   beta_rho  = the same with the spectral radius of the product.
/// Both are strictly below 1; beta_norm >= beta_rho.
struct BetaResult {
  double beta_norm = 0.0;
  double beta_rho = 0.0;
  Word argmax_norm;
  Word argmax_rho;
  std::size_t block_count = 0;
};

/// Exhaustive sweep over all N! blocks. Throws ConsistencyError if a value
/// reaches 1.
BetaResult beta(const ExtensionFamily& fam);

/// Checks ||A^{-1} over prefix n|| <= (N+2)^n * beta_norm^{C_N(w, n)} for
/// every prefix, reporting the largest ratio (at most 1 up to fp slack).
struct ProductBoundReport {
  std::vector<double> ratios;
  double max_ratio = 0.0;
  double slack = 1e-9;
  bool pass = false;
};

ProductBoundReport product_bound_check(const ExtensionFamily& fam, const Word& w, std::size_t n,
                                       double beta_norm_value);

/// Convenience overload that computes beta(fam) internally.
ProductBoundReport product_bound_check(const ExtensionFamily& fam, const Word& w, std::size_t n);

}  // namespace sgharm
