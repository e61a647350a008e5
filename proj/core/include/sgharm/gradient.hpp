#pragma once

#include <Eigen/Dense>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "sgharm/extension.hpp"
#include "sgharm/gasket.hpp"
#include "sgharm/measure.hpp"

namespace sgharm {

/// Quotient coordinates of the harmonic function with the given cell
/// values: (v_0 - v_{N-1}, ..., v_{N-2} - v_{N-1}).
Eigen::VectorXd project_cell(const Eigen::VectorXd& cell_values);

/// n-level harmonic approximation of f at the word w: reads f on the N
/// vertices of the level-n cell addressed by the first n letters, projects
/// to the quotient and applies the inverse extension product. The inverse
/// factors are applied right to left as matrix-vector products, which keeps
/// the rounding error at the level of the product's condition number.
Eigen::VectorXd nabla_n(const ExtensionFamily& fam, const GasketGraph& g,
                        const Eigen::VectorXd& f, const Word& w, int n);

/// Same computation from explicitly supplied cell values (images of
/// p_0..p_{N-1} of the level-n cell, in order).
Eigen::VectorXd nabla_from_cell_values(const ExtensionFamily& fam, const Word& w, int n,
                                       const Eigen::VectorXd& cell_values);

/// Per-level record of the harmonic approximations along one word.
struct GradientTrace {
  Word word;
  std::vector<int> levels;                   // 1..n_max
  std::vector<Eigen::VectorXd> coords;       // nabla_n in the quotient basis
  std::vector<double> energy_norms;          // ||nabla_n||_E
  std::vector<double> increment_norms;       // ||nabla_{n+1} - nabla_n||_E, last entry NaN
  std::vector<double> partial_sums;          // criterion partial sums at block levels, else NaN
};

GradientTrace gradient_trace(const ExtensionFamily& fam, const GasketGraph& g,
                             const Eigen::VectorXd& f, const Word& w, int n_max,
                             const MeasureSpec& spec);

/// Numerical verdicts are evidence only: a finite prefix can support
/// geometric decay but can never prove summability.
enum class SummabilityVerdict { kSummableEvidence, kInconclusive };

std::string to_string(SummabilityVerdict v);

/// Partial sums of r_w mu_w ||A^{-1}_w||_E over truncations of the word,
/// evaluated at multiples of the measure's block length. The fitted ratio
/// is the least-squares geometric ratio of the terms over the last half of
/// the computed levels.
struct Thm1Report {
  std::vector<int> levels;     // letter counts, multiples of block_len
  std::vector<double> terms;
  std::vector<double> partial_sums;
  // Per-letter-level ratio fitted over the last half of the terms; NaN when
  // fewer than four terms are available.
  double fitted_ratio = std::numeric_limits<double>::quiet_NaN();
  SummabilityVerdict verdict = SummabilityVerdict::kInconclusive;
};

Thm1Report criterion_thm1(const ExtensionFamily& fam, const MeasureSpec& spec, const Word& w,
                          int n_max);

/// Uniform criterion: r_b mu_b ||A_b^{-1}||_E < 1 for every block b of the
/// measure. The strict inequality is enforced with a 1e-12 margin so that
/// the exact boundary case (all values equal to 1) reports FAIL.
struct Cor51Report {
  std::vector<Word> blocks;
  std::vector<double> values;
  double max_value = 0.0;
  Word argmax;
  bool pass = false;
};

Cor51Report criterion_cor51(const ExtensionFamily& fam, const MeasureSpec& spec);

/// Threshold test for a level-2 Bernoulli measure on the 3-gasket:
/// mu_ii < 1/9 and mu_ij < 1/sqrt(17 + 4 sqrt(13)) for i != j, weights
/// positive and summing to 1. Cross-checked against criterion_cor51.
struct Sg3MeasureReport {
  bool pass = false;
  std::string reason;          // empty when pass
  double diag_max = 0.0;
  double offdiag_max = 0.0;
  double diag_threshold = 0.0;
  double offdiag_threshold = 0.0;
  bool cor51_pass = false;
  double cor51_max = 0.0;
};

Sg3MeasureReport check_sg3_measure(std::span<const double> weights);

/// Block-density criterion: PASS-evidence iff the running minimum of
/// C_N(w, n)/log n over the last half of levels exceeds 1/|log beta_norm|.
struct Thm2Report {
  std::vector<double> density;   // C_N(w, n)/log n for n = 2..n_max
  double threshold = 0.0;        // 1/|log beta_norm|
  double threshold_rho = 0.0;    // 1/|log beta_rho|, reported for comparison
  double running_min = 0.0;      // over the last half of levels
  bool pass_evidence = false;
};

Thm2Report criterion_thm2(const ExtensionFamily& fam, const Word& w, int n_max);
Thm2Report criterion_thm2(const ExtensionFamily& fam, const Word& w, int n_max,
                          const BetaResult& betas);

/// Least-squares geometric ratio of a positive sequence sampled at the
/// given positions: exp of the fitted slope of log(values) per unit step.
double fitted_geometric_ratio(std::span<const double> positions, std::span<const double> values);

}  // namespace sgharm
