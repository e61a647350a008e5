#include <doctest.h>

#include <cmath>

#include "sgharm/dirichlet.hpp"
#include "sgharm/errors.hpp"
#include "sgharm/gradient.hpp"
#include "sgharm/rng.hpp"

using namespace sgharm;

namespace {

MeasureSpec sg3_theorem_measure() {
  MeasureSpec spec;
  spec.alphabet_size = 3;
  spec.block_len = 2;
  spec.weights.assign(9, 0.7 / 6);
  for (int i = 0; i < 3; ++i) spec.weights[std::size_t(i * 3 + i)] = 0.10;
  return spec;
}

}  // namespace

TEST_CASE("project_cell quotients out constants") {
  CHECK(project_cell(Eigen::Vector3d(4, 4, 4)).cwiseAbs().maxCoeff() == 0.0);
  const Eigen::VectorXd p = project_cell(Eigen::Vector3d(1, 0, 0));
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 0.0);
  const Eigen::VectorXd shifted = project_cell(Eigen::Vector3d(1 + 2.5, 0 + 2.5, 0 + 2.5));
  CHECK((shifted - p).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("gradient of a harmonic function is its projected boundary data") {
  for (int n : {3, 4}) {
    const ExtensionFamily fam = build_family(n);
    const GasketGraph g = build_graph(n, 6);
    Rng rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd boundary(n);
      for (int k = 0; k < n; ++k) boundary[k] = rng.uniform() * 2 - 1;
      const Eigen::VectorXd h = harmonic_extend(fam, boundary, g);
      const Eigen::VectorXd expected = project_cell(boundary);
      const Word w = parse_word_spec("rand:" + std::to_string(trial), n, 6);
      for (int level = 0; level <= 6; ++level) {
        const Eigen::VectorXd grad = nabla_n(fam, g, h, w, level);
        CHECK((grad - expected).cwiseAbs().maxCoeff() <= 1e-9);
      }
    }
  }
}

TEST_CASE("gradient levels are exact for constants and scale linearly") {
  const ExtensionFamily fam = build_family(3);
  const GasketGraph g = build_graph(3, 5);
  const Word w = parse_word_spec("per:120", 3, 5);

  const Eigen::VectorXd constant = Eigen::VectorXd::Constant(g.vertex_count(), 7.0);
  CHECK(nabla_n(fam, g, constant, w, 5).cwiseAbs().maxCoeff() == 0.0);

  DirichletProblem p;
  p.measure = MeasureSpec::uniform(3);
  p.rhs = Eigen::VectorXd::Ones(g.vertex_count());
  p.boundary = Eigen::Vector3d(1, 2, 0);
  const Eigen::VectorXd u = solve_dirichlet(g, p);

  const Eigen::VectorXd grad = nabla_n(fam, g, u, w, 4);
  const Eigen::VectorXd scaled = nabla_n(fam, g, Eigen::VectorXd(2.5 * u), w, 4);
  CHECK((scaled - 2.5 * grad).cwiseAbs().maxCoeff() <= 1e-9 * grad.cwiseAbs().maxCoeff());
  const Eigen::VectorXd offset =
      nabla_n(fam, g, Eigen::VectorXd(u.array() + 13.0), w, 4);
  CHECK((offset - grad).cwiseAbs().maxCoeff() <= 1e-12);

  CHECK_THROWS_AS(nabla_n(fam, g, u, w, 6), ValidationError);
}

TEST_CASE("gradient trace records levels, increments and partial sums") {
  const ExtensionFamily fam = build_family(3);
  const GasketGraph g = build_graph(3, 6);
  const MeasureSpec spec = MeasureSpec::uniform(3);
  DirichletProblem p;
  p.measure = spec;
  p.rhs = Eigen::VectorXd::Ones(g.vertex_count());
  p.boundary = Eigen::Vector3d::Zero();
  const Eigen::VectorXd u = solve_dirichlet(g, p);

  const Word w = parse_word_spec("per:012", 3, 6);
  const GradientTrace trace = gradient_trace(fam, g, u, w, 6, spec);
  CHECK(trace.levels.size() == 6);
  CHECK(trace.coords.size() == 6);
  CHECK(trace.increment_norms.size() == 6);
  CHECK(std::isnan(trace.increment_norms.back()));
  for (std::size_t i = 0; i + 1 < trace.partial_sums.size(); ++i) {
    CHECK(trace.partial_sums[i + 1] >= trace.partial_sums[i] - 1e-15);
  }

  // harmonic input: all increments vanish
  const Eigen::VectorXd h = harmonic_extend(fam, Eigen::Vector3d(1, 0, 2), g);
  const GradientTrace flat = gradient_trace(fam, g, h, w, 6, spec);
  for (std::size_t i = 0; i + 1 < flat.increment_norms.size(); ++i) {
    CHECK(flat.increment_norms[i] <= 1e-9);
  }
}

TEST_CASE("theorem-1 terms under the standard measure") {
  const ExtensionFamily fam = build_family(3);
  const MeasureSpec spec = MeasureSpec::uniform(3);

  // constant word: every term is exactly 1, no decay, inconclusive
  const Word zeros = parse_word_spec("per:0", 3, 12);
  const Thm1Report r0 = criterion_thm1(fam, spec, zeros, 12);
  for (double t : r0.terms) CHECK(t == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r0.verdict == SummabilityVerdict::kInconclusive);
  CHECK(r0.partial_sums.back() == doctest::Approx(12.0).epsilon(1e-11));

  // term identity: term_n = ||inverse product|| / (N+2)^n, and the block
  // bound term_n <= beta^{C_N}
  const double beta3 = beta(fam).beta_norm;
  const Word w = parse_word_spec("rand:6", 3, 12);
  const Thm1Report r = criterion_thm1(fam, spec, w, 12);
  const BlockReport blocks = count_blocks(w, 12);
  for (std::size_t i = 0; i < r.terms.size(); ++i) {
    const int level = r.levels[i];
    const double norm = word_matrix(fam, truncate(w, std::size_t(level))).energy_norm;
    CHECK(r.terms[i] ==
          doctest::Approx(norm / std::pow(5.0, level)).epsilon(1e-9));
    CHECK(r.terms[i] <=
          std::pow(beta3, double(blocks.count_at(std::size_t(level)))) * (1 + 1e-9));
  }

  // the cyclic word decays geometrically
  const Word cyc = parse_word_spec("per:012", 3, 16);
  const Thm1Report rc = criterion_thm1(fam, spec, cyc, 16);
  CHECK(rc.verdict == SummabilityVerdict::kSummableEvidence);
  CHECK(rc.fitted_ratio < 1.0);
}

TEST_CASE("theorem-1 terms under the unequal-weight pair measure") {
  const ExtensionFamily fam = build_family(3);
  const MeasureSpec spec = sg3_theorem_measure();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Word w = sample_word(spec, 20, seed);
    const Thm1Report r = criterion_thm1(fam, spec, w, 20);
    CHECK(r.levels.front() == 2);
    CHECK(r.levels.back() == 20);
    for (std::size_t i = 0; i + 1 < r.terms.size(); ++i) {
      CHECK(r.terms[i + 1] / r.terms[i] <= 0.9 + 1e-9);
    }
    CHECK(r.verdict == SummabilityVerdict::kSummableEvidence);
  }
}

TEST_CASE("uniform criterion values are exactly one for the standard measure") {
  for (int n = 3; n <= 8; ++n) {
    const ExtensionFamily fam = build_family(n);
    const Cor51Report report = criterion_cor51(fam, MeasureSpec::uniform(n));
    CAPTURE(n);
    CHECK_FALSE(report.pass);
    for (double v : report.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("uniform criterion passes for the unequal-weight pair measure") {
  const ExtensionFamily fam = build_family(3);
  const Cor51Report report = criterion_cor51(fam, sg3_theorem_measure());
  CHECK(report.pass);
  CHECK(report.max_value == doctest::Approx(0.9).epsilon(1e-10));
  CHECK(report.blocks.size() == 9);

  MeasureSpec boundary = sg3_theorem_measure();
  // push the diagonal weights to the threshold 1/9 exactly
  for (int i = 0; i < 3; ++i) boundary.weights[std::size_t(i * 3 + i)] = 1.0 / 9;
  const double rest = (1.0 - 3.0 / 9) / 6;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) boundary.weights[std::size_t(i * 3 + j)] = rest;
    }
  }
  CHECK_FALSE(criterion_cor51(fam, boundary).pass);
}

TEST_CASE("the 3-gasket measure checker enforces strict thresholds") {
  std::vector<double> good(9, 0.7 / 6);
  for (int i = 0; i < 3; ++i) good[std::size_t(i * 3 + i)] = 0.10;
  const Sg3MeasureReport pass = check_sg3_measure(good);
  CHECK(pass.pass);
  CHECK(pass.cor51_pass);
  CHECK(pass.cor51_max == doctest::Approx(0.9).epsilon(1e-10));
  CHECK(pass.offdiag_threshold ==
        doctest::Approx(1.0 / std::sqrt(17.0 + 4.0 * std::sqrt(13.0))).epsilon(1e-14));

  std::vector<double> diag_boundary(9, (1.0 - 3.0 / 9) / 6);
  for (int i = 0; i < 3; ++i) diag_boundary[std::size_t(i * 3 + i)] = 1.0 / 9;
  CHECK_FALSE(check_sg3_measure(diag_boundary).pass);

  const std::vector<double> uniform(9, 1.0 / 9);
  CHECK_FALSE(check_sg3_measure(uniform).pass);

  const std::vector<double> not_probability(9, 0.2);
  CHECK_THROWS_AS(check_sg3_measure(not_probability), ValidationError);
}

TEST_CASE("measure checker PASS implies uniform-criterion PASS") {
  Rng rng(64);
  int passes = 0;
  while (passes < 20) {
    // random weights below the thresholds, renormalized; keep only those
    // still below after normalization
    std::vector<double> w(9);
    double sum = 0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double cap = (i == j) ? 1.0 / 9 : 1.0 / std::sqrt(17.0 + 4.0 * std::sqrt(13.0));
        w[std::size_t(i * 3 + j)] = cap * (0.5 + 0.5 * rng.uniform());
        sum += w[std::size_t(i * 3 + j)];
      }
    }
    for (double& x : w) x /= sum;
    bool below = true;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double cap = (i == j) ? 1.0 / 9 : 1.0 / std::sqrt(17.0 + 4.0 * std::sqrt(13.0));
        if (w[std::size_t(i * 3 + j)] >= cap - 1e-12) below = false;
      }
    }
    if (!below) continue;
    ++passes;
    const Sg3MeasureReport report = check_sg3_measure(w);
    CHECK(report.pass);
    CHECK(report.cor51_pass);
  }
}

TEST_CASE("block-density criterion separates cyclic from constant words") {
  const ExtensionFamily fam = build_family(3);
  const BetaResult betas = beta(fam);
  CHECK(1.0 / std::abs(std::log(betas.beta_norm)) == doctest::Approx(4.2242).epsilon(1e-3));

  const Word cyc = parse_word_spec("per:012", 3, 200);
  const Thm2Report pass = criterion_thm2(fam, cyc, 200, betas);
  CHECK(pass.pass_evidence);
  // C(n) = n - 1 for the fully cyclic word
  CHECK(pass.density.back() == doctest::Approx(199.0 / std::log(200.0)).epsilon(1e-12));
  CHECK(pass.threshold < pass.threshold_rho);

  const Word zeros = parse_word_spec("per:0", 3, 200);
  const Thm2Report fail = criterion_thm2(fam, zeros, 200, betas);
  CHECK_FALSE(fail.pass_evidence);
  CHECK(fail.running_min == 0.0);

  const Word random = parse_word_spec("rand:11", 3, 10000);
  const Thm2Report rnd = criterion_thm2(fam, random, 10000, betas);
  CHECK(rnd.pass_evidence);
}

TEST_CASE("fitted ratio recovers exact geometric decay") {
  std::vector<double> pos, val;
  for (int k = 0; k < 12; ++k) {
    pos.push_back(double(k));
    val.push_back(3.0 * std::pow(0.75, k));
  }
  CHECK(fitted_geometric_ratio(pos, val) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK_THROWS_AS(fitted_geometric_ratio(std::vector<double>{1.0}, std::vector<double>{1.0}),
                  ValidationError);
}
