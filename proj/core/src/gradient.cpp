#include "sgharm/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sgharm/errors.hpp"

namespace sgharm {

namespace {

constexpr double kStrictMargin = 1e-12;

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

Eigen::VectorXd project_cell(const Eigen::VectorXd& cell_values) {
  return project_boundary(cell_values);
}

Eigen::VectorXd nabla_from_cell_values(const ExtensionFamily& fam, const Word& w, int n,
                                       const Eigen::VectorXd& cell_values) {
  if (cell_values.size() != fam.alphabet_size) {
    throw ValidationError("nabla: expected one value per cell vertex");
  }
  return apply_inverse_product(fam, w, static_cast<std::size_t>(n),
                               project_cell(cell_values));
}

Eigen::VectorXd nabla_n(const ExtensionFamily& fam, const GasketGraph& g,
                        const Eigen::VectorXd& f, const Word& w, int n) {
  if (n < 0 || n > g.level()) {
    throw ValidationError("nabla_n: level " + std::to_string(n) + " outside [0, " +
                          std::to_string(g.level()) + "]");
  }
  if (w.size() < static_cast<std::size_t>(n)) throw ValidationError("nabla_n: word too short");
  if (f.size() != static_cast<Eigen::Index>(g.vertex_count())) {
    throw ValidationError("nabla_n: value vector size does not match the vertex count");
  }
  const std::vector<std::int32_t> ids = g.cell_vertex_ids(truncate(w, static_cast<std::size_t>(n)));
  Eigen::VectorXd cell_values(fam.alphabet_size);
  for (int k = 0; k < fam.alphabet_size; ++k) cell_values[k] = f[ids[static_cast<std::size_t>(k)]];
  return nabla_from_cell_values(fam, w, n, cell_values);
}

GradientTrace gradient_trace(const ExtensionFamily& fam, const GasketGraph& g,
                             const Eigen::VectorXd& f, const Word& w, int n_max,
                             const MeasureSpec& spec) {
  if (n_max < 1 || n_max > g.level()) {
    throw ValidationError("gradient_trace: level range outside the graph");
  }
  GradientTrace trace;
  trace.word = truncate(w, static_cast<std::size_t>(n_max));

  const Thm1Report thm1 = criterion_thm1(fam, spec, w, n_max);
  std::vector<double> sums_by_level(static_cast<std::size_t>(n_max) + 1, nan());
  for (std::size_t i = 0; i < thm1.levels.size(); ++i) {
    sums_by_level[static_cast<std::size_t>(thm1.levels[i])] = thm1.partial_sums[i];
  }

  for (int n = 1; n <= n_max; ++n) {
    trace.levels.push_back(n);
    trace.coords.push_back(nabla_n(fam, g, f, w, n));
    trace.energy_norms.push_back(energy_norm(fam, trace.coords.back()));
    trace.partial_sums.push_back(sums_by_level[static_cast<std::size_t>(n)]);
  }
  for (int n = 1; n < n_max; ++n) {
    const Eigen::VectorXd diff =
        trace.coords[static_cast<std::size_t>(n)] - trace.coords[static_cast<std::size_t>(n - 1)];
    trace.increment_norms.push_back(energy_norm(fam, diff));
  }
  trace.increment_norms.push_back(nan());
  return trace;
}

std::string to_string(SummabilityVerdict v) {
  return v == SummabilityVerdict::kSummableEvidence ? "summable-evidence" : "inconclusive";
}

double fitted_geometric_ratio(std::span<const double> positions, std::span<const double> values) {
  if (positions.size() != values.size() || positions.size() < 2) {
    throw ValidationError("fitted_geometric_ratio: need at least two points");
  }
  const double n = static_cast<double>(positions.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (!(values[i] > 0.0)) {
      throw ValidationError("fitted_geometric_ratio: values must be positive");
    }
    const double x = positions[i];
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw ValidationError("fitted_geometric_ratio: degenerate positions");
  return std::exp((n * sxy - sx * sy) / denom);
}

Thm1Report criterion_thm1(const ExtensionFamily& fam, const MeasureSpec& spec, const Word& w,
                          int n_max) {
  spec.validate();
  if (spec.alphabet_size != fam.alphabet_size) {
    throw ValidationError("criterion_thm1: measure alphabet does not match the family");
  }
  if (w.size() < static_cast<std::size_t>(n_max)) {
    throw ValidationError("criterion_thm1: word too short");
  }

  Thm1Report report;
  const std::vector<double> norms =
      normalized_prefix_inv_norms(fam, w, static_cast<std::size_t>(n_max));

  // term_k = r mu ||A^-1|| over the length-k prefix, assembled in log space:
  // the normalized norm already carries the 1/(N+2)^k factor.
  const double log_np2 = std::log(static_cast<double>(fam.alphabet_size + 2));
  const double log_r_per_letter =
      std::log(static_cast<double>(fam.alphabet_size) / (fam.alphabet_size + 2));
  double log_mu = 0.0;
  double sum = 0.0;
  for (int k = spec.block_len; k <= n_max; k += spec.block_len) {
    log_mu += std::log(spec.block_weight(w, static_cast<std::size_t>(k - spec.block_len)));
    const double log_term = log_r_per_letter * k + log_mu + log_np2 * k +
                            std::log(norms[static_cast<std::size_t>(k - 1)]);
    const double term = std::exp(log_term);
    sum += term;
    report.levels.push_back(k);
    report.terms.push_back(term);
    report.partial_sums.push_back(sum);
  }

  if (report.terms.size() >= 4) {
    const std::size_t start = report.terms.size() / 2;
    std::vector<double> pos, val;
    for (std::size_t i = start; i < report.terms.size(); ++i) {
      pos.push_back(static_cast<double>(report.levels[i]));
      val.push_back(report.terms[i]);
    }
    report.fitted_ratio = fitted_geometric_ratio(pos, val);
    if (report.fitted_ratio < 1.0) {
      report.verdict = SummabilityVerdict::kSummableEvidence;
    }
  }
  return report;
}

Cor51Report criterion_cor51(const ExtensionFamily& fam, const MeasureSpec& spec) {
  spec.validate();
  if (spec.alphabet_size != fam.alphabet_size) {
    throw ValidationError("criterion_cor51: measure alphabet does not match the family");
  }
  Cor51Report report;
  const double r = spec.resistance_factor();
  for (std::size_t index = 0; index < spec.block_count(); ++index) {
    const Word block = spec.block_word(index);
    const WordMatrix wm = word_matrix(fam, block);
    const double value = r * spec.weights[index] * wm.energy_norm;
    report.blocks.push_back(block);
    report.values.push_back(value);
    if (value > report.max_value) {
      report.max_value = value;
      report.argmax = block;
    }
  }
  report.pass = report.max_value < 1.0 - kStrictMargin;
  return report;
}

Sg3MeasureReport check_sg3_measure(std::span<const double> weights) {
  if (weights.size() != 9) {
    throw ValidationError("check_sg3_measure: expected 9 weights indexed by letter pairs");
  }
  MeasureSpec spec;
  spec.alphabet_size = 3;
  spec.block_len = 2;
  spec.weights.assign(weights.begin(), weights.end());
  spec.validate();  // positive, sum to 1

  Sg3MeasureReport report;
  report.diag_threshold = 1.0 / 9.0;
  report.offdiag_threshold = 1.0 / std::sqrt(17.0 + 4.0 * std::sqrt(13.0));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double w = weights[static_cast<std::size_t>(i * 3 + j)];
      if (i == j) {
        report.diag_max = std::max(report.diag_max, w);
      } else {
        report.offdiag_max = std::max(report.offdiag_max, w);
      }
    }
  }
  const bool diag_ok = report.diag_max < report.diag_threshold - kStrictMargin;
  const bool offdiag_ok = report.offdiag_max < report.offdiag_threshold - kStrictMargin;
  report.pass = diag_ok && offdiag_ok;
  if (!diag_ok) {
    report.reason = "a diagonal weight reaches the threshold 1/9";
  } else if (!offdiag_ok) {
    report.reason = "an off-diagonal weight reaches the threshold 1/sqrt(17+4*sqrt(13))";
  }

  const ExtensionFamily fam = build_family(3);
  const Cor51Report cor = criterion_cor51(fam, spec);
  report.cor51_pass = cor.pass;
  report.cor51_max = cor.max_value;
  if (report.pass && !cor.pass) {
    throw ConsistencyError(
        "check_sg3_measure: threshold test passed but the uniform criterion failed");
  }
  return report;
}

Thm2Report criterion_thm2(const ExtensionFamily& fam, const Word& w, int n_max,
                          const BetaResult& betas) {
  if (w.alphabet_size != fam.alphabet_size) {
    throw ValidationError("criterion_thm2: word alphabet does not match the family");
  }
  if (n_max < 4) throw ValidationError("criterion_thm2: need n_max >= 4");
  if (w.size() < static_cast<std::size_t>(n_max)) {
    throw ValidationError("criterion_thm2: word too short");
  }
  Thm2Report report;
  report.threshold = 1.0 / std::abs(std::log(betas.beta_norm));
  report.threshold_rho = 1.0 / std::abs(std::log(betas.beta_rho));

  const BlockReport blocks = count_blocks(w, static_cast<std::size_t>(n_max));
  for (int n = 2; n <= n_max; ++n) {
    report.density.push_back(blocks.density_ratio[static_cast<std::size_t>(n - 1)]);
  }
  const std::size_t start = report.density.size() / 2;
  report.running_min = *std::min_element(report.density.begin() + static_cast<std::ptrdiff_t>(start),
                                         report.density.end());
  report.pass_evidence = report.running_min > report.threshold;
  return report;
}

Thm2Report criterion_thm2(const ExtensionFamily& fam, const Word& w, int n_max) {
  return criterion_thm2(fam, w, n_max, beta(fam));
}

}  // namespace sgharm
