#include "sgharm/extension.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "sgharm/errors.hpp"

namespace sgharm {

namespace {

Eigen::MatrixXd to_double(const RationalMatrix& m) {
  Eigen::MatrixXd out(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < m[r].size(); ++c) out(r, c) = m[r][c].to_double();
  }
  return out;
}

// Gauss-Jordan inverse in exact arithmetic. The matrices here are tiny and
// well structured, so pivots never vanish and entries stay small.
RationalMatrix rational_inverse(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix a = m;
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Rational(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].num() == 0) ++pivot;
    if (pivot == n) throw ConsistencyError("rational_inverse: singular matrix");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational p = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] = a[col][c] / p;
      inv[col][c] = inv[col][c] / p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].num() == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] = a[r][c] - f * a[col][c];
        inv[r][c] = inv[r][c] - f * inv[col][c];
      }
    }
  }
  return inv;
}

// Multiset comparison of computed eigenvalues against expected values.
double spectrum_deviation(const Eigen::MatrixXd& m, std::vector<double> expected) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
  std::vector<double> got;
  double imag_dev = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    imag_dev = std::max(imag_dev, std::abs(solver.eigenvalues()[i].imag()));
    got.push_back(solver.eigenvalues()[i].real());
  }
  std::sort(got.begin(), got.end());
  std::sort(expected.begin(), expected.end());
  double dev = imag_dev;
  for (std::size_t i = 0; i < got.size(); ++i) dev = std::max(dev, std::abs(got[i] - expected[i]));
  return dev;
}

}  // namespace

ExtensionFamily build_family(int alphabet_size) {
  const int n = alphabet_size;
  if (n < kMinAlphabet || n > kMaxAlphabet) {
    throw ValidationError("build_family: alphabet size outside [3, 10]");
  }
  ExtensionFamily fam;
  fam.alphabet_size = n;

  // A_0 in exact arithmetic, then cyclic row/column permutations for A_i.
  RationalMatrix a0(n, std::vector<Rational>(n, Rational(0)));
  a0[0][0] = Rational(1);
  for (int r = 1; r < n; ++r) {
    a0[r][0] = Rational(2, n + 2);
    for (int c = 1; c < n; ++c) a0[r][c] = Rational(1 + (r == c ? 1 : 0), n + 2);
  }
  for (int i = 0; i < n; ++i) {
    RationalMatrix ai(n, std::vector<Rational>(n, Rational(0)));
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        ai[r][c] = a0[((r - i) % n + n) % n][((c - i) % n + n) % n];
      }
    }
    fam.full_exact.push_back(std::move(ai));
  }

  // Reduced action on the quotient basis: column k of A~_i is the
  // projection of A_i applied to the k-th indicator, i.e.
  // A~_i[r][k] = A_i[r][k] - A_i[N-1][k].
  for (int i = 0; i < n; ++i) {
    const RationalMatrix& ai = fam.full_exact[static_cast<std::size_t>(i)];
    RationalMatrix red(n - 1, std::vector<Rational>(n - 1, Rational(0)));
    for (int r = 0; r < n - 1; ++r) {
      for (int c = 0; c < n - 1; ++c) red[r][c] = ai[r][c] - ai[n - 1][c];
    }
    fam.reduced_inv_exact.push_back(rational_inverse(red));
    fam.reduced_exact.push_back(std::move(red));
  }

  // Boundary energy Gram matrix on the quotient basis.
  fam.gram_exact.assign(static_cast<std::size_t>(n - 1),
                        std::vector<Rational>(static_cast<std::size_t>(n - 1), Rational(-1)));
  for (int k = 0; k < n - 1; ++k) fam.gram_exact[k][k] = Rational(n - 1);

  for (int i = 0; i < n; ++i) {
    fam.full.push_back(to_double(fam.full_exact[static_cast<std::size_t>(i)]));
    fam.reduced.push_back(to_double(fam.reduced_exact[static_cast<std::size_t>(i)]));
    fam.reduced_inv.push_back(to_double(fam.reduced_inv_exact[static_cast<std::size_t>(i)]));
  }
  fam.gram = to_double(fam.gram_exact);

  Eigen::LLT<Eigen::MatrixXd> llt(fam.gram);
  if (llt.info() != Eigen::Success) {
    throw ConsistencyError("build_family: energy Gram matrix is not positive definite");
  }
  fam.chol_lt = llt.matrixU();
  fam.chol_lt_inv = fam.chol_lt.inverse();
  return fam;
}

Eigen::VectorXd project_boundary(const Eigen::VectorXd& values) {
  const Eigen::Index n = values.size();
  Eigen::VectorXd out(n - 1);
  for (Eigen::Index k = 0; k < n - 1; ++k) out[k] = values[k] - values[n - 1];
  return out;
}

double energy_norm(const ExtensionFamily& fam, const Eigen::MatrixXd& m) {
  if (m.rows() != fam.gram.rows() || m.cols() != fam.gram.cols()) {
    throw ValidationError("energy_norm: matrix size does not match the quotient dimension");
  }
  // ||M||_E = 2-norm of B = L^T M L^{-T}; computed as the top eigenvalue of
  // the symmetric PSD matrix B^T B.
  const Eigen::MatrixXd b = fam.chol_lt * m * fam.chol_lt_inv;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b.transpose() * b);
  if (solver.info() != Eigen::Success) throw ConsistencyError("energy_norm: eigensolver failed");
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

double energy_norm(const ExtensionFamily& fam, const Eigen::VectorXd& x) {
  return std::sqrt(std::max(0.0, x.dot(fam.gram * x)));
}

double spectral_radius(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
  double rho = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    rho = std::max(rho, std::abs(solver.eigenvalues()[i]));
  }
  return rho;
}

WordMatrix word_matrix(const ExtensionFamily& fam, const Word& w) {
  w.validate();
  if (w.alphabet_size != fam.alphabet_size) {
    throw ValidationError("word_matrix: word alphabet does not match the family");
  }
  WordMatrix out;
  out.word = w;
  const Eigen::Index dim = fam.gram.rows();
  out.matrix = Eigen::MatrixXd::Identity(dim, dim);
  for (std::uint8_t l : w.letters) out.matrix = out.matrix * fam.reduced_inv[l];
  out.energy_norm = energy_norm(fam, out.matrix);
  out.spectral_radius = spectral_radius(out.matrix);
  return out;
}

Eigen::VectorXd apply_inverse_product(const ExtensionFamily& fam, const Word& w, std::size_t n,
                                      Eigen::VectorXd x) {
  if (w.size() < n) throw ValidationError("apply_inverse_product: word too short");
  for (std::size_t k = n; k > 0; --k) x = fam.reduced_inv[w.letters[k - 1]] * x;
  return x;
}

std::vector<double> normalized_prefix_inv_norms(const ExtensionFamily& fam, const Word& w,
                                                std::size_t n) {
  if (w.size() < n) throw ValidationError("normalized_prefix_inv_norms: word too short");
  const double scale = 1.0 / (fam.alphabet_size + 2);
  const Eigen::Index dim = fam.gram.rows();
  Eigen::MatrixXd product = Eigen::MatrixXd::Identity(dim, dim);
  std::vector<double> norms;
  norms.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    product = product * (scale * fam.reduced_inv[w.letters[k]]);
    norms.push_back(energy_norm(fam, product));
  }
  return norms;
}

EigencheckReport eigencheck(const ExtensionFamily& fam, double tolerance) {
  const int n = fam.alphabet_size;
  EigencheckReport report;
  report.tolerance = tolerance;

  std::vector<double> expect_full = {1.0, static_cast<double>(n) / (n + 2)};
  expect_full.insert(expect_full.end(), static_cast<std::size_t>(n - 2), 1.0 / (n + 2));
  std::vector<double> expect_inv = {static_cast<double>(n + 2) / n};
  expect_inv.insert(expect_inv.end(), static_cast<std::size_t>(n - 2), static_cast<double>(n + 2));

  const Eigen::MatrixXd gram_inv = fam.gram.inverse();
  for (int i = 0; i < n; ++i) {
    report.max_deviation_full =
        std::max(report.max_deviation_full, spectrum_deviation(fam.full[i], expect_full));
    report.max_deviation_reduced_inv = std::max(
        report.max_deviation_reduced_inv, spectrum_deviation(fam.reduced_inv[i], expect_inv));
    report.max_norm_deviation =
        std::max(report.max_norm_deviation,
                 std::abs(energy_norm(fam, fam.reduced_inv[i]) - (n + 2.0)));
    // self-adjointness with respect to the energy inner product
    const Eigen::MatrixXd adj = gram_inv * fam.reduced_inv[i].transpose() * fam.gram;
    report.max_selfadjoint_deviation =
        std::max(report.max_selfadjoint_deviation,
                 (adj - fam.reduced_inv[i]).cwiseAbs().maxCoeff());
  }
  report.pass = report.max_deviation_full <= tolerance &&
                report.max_deviation_reduced_inv <= tolerance &&
                report.max_norm_deviation <= tolerance &&
                report.max_selfadjoint_deviation <= tolerance;
  return report;
}

BetaResult beta(const ExtensionFamily& fam) {
  const int n = fam.alphabet_size;
  const double denom = std::pow(static_cast<double>(n + 2), n - 1);
  const double exponent = 1.0 / (n - 1);
  BetaResult result;
  const auto blocks = enumerate_blocks(n);
  result.block_count = blocks.size();
  for (const Word& block : blocks) {
    const WordMatrix wm = word_matrix(fam, block);
    const double bn = std::pow(wm.energy_norm / denom, exponent);
    const double br = std::pow(wm.spectral_radius / denom, exponent);
    if (bn > result.beta_norm) {
      result.beta_norm = bn;
      result.argmax_norm = block;
    }
    if (br > result.beta_rho) {
      result.beta_rho = br;
      result.argmax_rho = block;
    }
  }
  if (result.beta_norm >= 1.0 || result.beta_rho >= 1.0) {
    throw ConsistencyError("beta: block contraction factor reached 1 for N = " +
                           std::to_string(n));
  }
  return result;
}

ProductBoundReport product_bound_check(const ExtensionFamily& fam, const Word& w, std::size_t n,
                                       double beta_norm_value) {
  ProductBoundReport report;
  const BlockReport blocks = count_blocks(w, n);
  const std::vector<double> norms = normalized_prefix_inv_norms(fam, w, n);
  report.ratios.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    // normalized norm is ||A^-1 prefix|| / (N+2)^k, so the bound reads
    // normalized <= beta^C.
    const double bound = std::pow(beta_norm_value, static_cast<double>(blocks.count[k - 1]));
    report.ratios.push_back(norms[k - 1] / bound);
  }
  report.max_ratio = *std::max_element(report.ratios.begin(), report.ratios.end());
  report.pass = report.max_ratio <= 1.0 + report.slack;
  return report;
}

ProductBoundReport product_bound_check(const ExtensionFamily& fam, const Word& w, std::size_t n) {
  return product_bound_check(fam, w, n, beta(fam).beta_norm);
}

}  // namespace sgharm
