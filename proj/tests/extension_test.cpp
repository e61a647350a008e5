#include <doctest.h>

#include <cmath>

#include "sgharm/errors.hpp"
#include "sgharm/extension.hpp"
#include "sgharm/rng.hpp"

using namespace sgharm;

namespace {

// Independent oracle for the energy operator norm of a 2x2 matrix: builds
// Q = G^{-1} M^T G M directly and solves the characteristic quadratic.
double norm_oracle_2x2(const Eigen::Matrix2d& g, const Eigen::Matrix2d& m) {
  const Eigen::Matrix2d q = g.inverse() * m.transpose() * g * m;
  const double tr = q.trace();
  const double det = q.determinant();
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  return std::sqrt((tr + disc) / 2.0);
}

Eigen::Matrix2d gram3() {
  Eigen::Matrix2d g;
  g << 2.0, -1.0, -1.0, 2.0;
  return g;
}

}  // namespace

TEST_CASE("the 3-gasket family matches the closed-form matrices") {
  const ExtensionFamily fam = build_family(3);
  Eigen::MatrixXd a0(3, 3);
  a0 << 5, 0, 0, 2, 2, 1, 2, 1, 2;
  a0 /= 5.0;
  CHECK((fam.full[0] - a0).cwiseAbs().maxCoeff() == 0.0);

  CHECK(fam.gram_exact[0][0] == Rational(2));
  CHECK(fam.gram_exact[0][1] == Rational(-1));
  CHECK(fam.gram_exact[1][0] == Rational(-1));
  CHECK(fam.gram_exact[1][1] == Rational(2));

  CHECK(fam.full_exact[0][0][0].to_string() == "1");
  CHECK(fam.full_exact[0][1][0].to_string() == "2/5");
  CHECK(fam.full_exact[0][1][2].to_string() == "1/5");
}

TEST_CASE("row sums of every full matrix are exactly one") {
  for (int n = 3; n <= 10; ++n) {
    const ExtensionFamily fam = build_family(n);
    for (const RationalMatrix& mat : fam.full_exact) {
      for (const auto& row : mat) {
        Rational sum(0);
        for (const Rational& e : row) sum = sum + e;
        CHECK(sum == Rational(1));
      }
    }
  }
}

TEST_CASE("build_family rejects unsupported sizes") {
  CHECK_THROWS_AS(build_family(2), ValidationError);
  CHECK_THROWS_AS(build_family(11), ValidationError);
}

TEST_CASE("eigencheck confirms the spectra with multiplicities") {
  for (int n : {3, 6, 10}) {
    const ExtensionFamily fam = build_family(n);
    const EigencheckReport report = eigencheck(fam);
    CAPTURE(n);
    CHECK(report.pass);
    CHECK(report.max_deviation_full <= 1e-10);
    CHECK(report.max_deviation_reduced_inv <= 1e-10);
    CHECK(report.max_norm_deviation <= 1e-10);
    CHECK(report.max_selfadjoint_deviation <= 1e-10);
  }
}

TEST_CASE("reduced inverses have energy norm N+2") {
  for (int n = 3; n <= 8; ++n) {
    const ExtensionFamily fam = build_family(n);
    for (int i = 0; i < n; ++i) {
      CHECK(energy_norm(fam, fam.reduced_inv[i]) == doctest::Approx(n + 2.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("word products reproduce the closed-form 3-gasket norms") {
  const ExtensionFamily fam = build_family(3);
  const double offdiag = 25.0 / 9.0 * std::sqrt(17.0 + 4.0 * std::sqrt(13.0));

  CHECK(word_matrix(fam, Word({}, 3)).energy_norm == doctest::Approx(1.0).epsilon(1e-14));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const WordMatrix wm = word_matrix(fam, Word({std::uint8_t(i), std::uint8_t(j)}, 3));
      const double expected = (i == j) ? 25.0 : offdiag;
      CHECK(wm.energy_norm == doctest::Approx(expected).epsilon(1e-11));
      // cross-check against the quadratic-formula oracle
      CHECK(wm.energy_norm ==
            doctest::Approx(norm_oracle_2x2(gram3(), wm.matrix)).epsilon(1e-12));
      CHECK(wm.energy_norm >= wm.spectral_radius);
    }
  }
}

TEST_CASE("energy norm agrees with the definition on random matrices") {
  const ExtensionFamily fam = build_family(3);
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::Matrix2d m;
    m << rng.uniform() * 4 - 2, rng.uniform() * 4 - 2, rng.uniform() * 4 - 2,
        rng.uniform() * 4 - 2;
    CHECK(energy_norm(fam, Eigen::MatrixXd(m)) ==
          doctest::Approx(norm_oracle_2x2(gram3(), m)).epsilon(1e-10));
  }
}

TEST_CASE("energy norm is submultiplicative on word products") {
  for (int n : {3, 4, 5}) {
    const ExtensionFamily fam = build_family(n);
    Rng rng(99);
    for (int trial = 0; trial < 40; ++trial) {
      Word u, v;
      u.alphabet_size = v.alphabet_size = n;
      const auto len_u = 1 + rng.below(6), len_v = 1 + rng.below(6);
      for (std::uint32_t i = 0; i < len_u; ++i) {
        u.letters.push_back(std::uint8_t(rng.below(std::uint32_t(n))));
      }
      for (std::uint32_t i = 0; i < len_v; ++i) {
        v.letters.push_back(std::uint8_t(rng.below(std::uint32_t(n))));
      }
      Word uv = u;
      uv.letters.insert(uv.letters.end(), v.letters.begin(), v.letters.end());
      const double norm_uv = word_matrix(fam, uv).energy_norm;
      const double bound = word_matrix(fam, u).energy_norm * word_matrix(fam, v).energy_norm;
      CHECK(norm_uv <= bound * (1 + 1e-12));
    }
  }
}

TEST_CASE("gram self-adjointness of the reduced inverses") {
  for (int n = 3; n <= 8; ++n) {
    const ExtensionFamily fam = build_family(n);
    const Eigen::MatrixXd gram_inv = fam.gram.inverse();
    for (int i = 0; i < n; ++i) {
      const Eigen::MatrixXd adj = gram_inv * fam.reduced_inv[i].transpose() * fam.gram;
      CHECK((adj - fam.reduced_inv[i]).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("beta values for the 3-gasket match the closed forms") {
  const ExtensionFamily fam = build_family(3);
  const BetaResult result = beta(fam);
  CHECK(result.block_count == 6);
  CHECK(result.beta_rho ==
        doctest::Approx(std::sqrt((7.0 + std::sqrt(13.0)) / 18.0)).epsilon(1e-13));
  CHECK(result.beta_norm ==
        doctest::Approx(std::pow(17.0 + 4.0 * std::sqrt(13.0), 0.25) / 3.0).epsilon(1e-13));
  CHECK(result.beta_norm >= result.beta_rho);

  // exhaustive oracle through the quadratic-formula norm
  double oracle = 0.0;
  for (const Word& block : enumerate_blocks(3)) {
    Eigen::Matrix2d m = Eigen::Matrix2d::Identity();
    for (std::uint8_t l : block.letters) m = m * fam.reduced_inv[l];
    oracle = std::max(oracle, std::sqrt(norm_oracle_2x2(gram3(), m) / 25.0));
  }
  CHECK(result.beta_norm == doctest::Approx(oracle).epsilon(1e-13));
}

TEST_CASE("beta stays below one for larger alphabets") {
  for (int n = 4; n <= 6; ++n) {
    const ExtensionFamily fam = build_family(n);
    const BetaResult result = beta(fam);
    CAPTURE(n);
    CHECK(result.beta_norm < 1.0);
    CHECK(result.beta_rho <= result.beta_norm);
    std::size_t fact = 1;
    for (int i = 2; i <= n; ++i) fact *= std::size_t(i);
    CHECK(result.block_count == fact);
  }
}

TEST_CASE("no block product reaches the trivial norm bound") {
  for (int n : {3, 4, 5}) {
    const ExtensionFamily fam = build_family(n);
    const double trivial = std::pow(n + 2.0, n - 1.0);
    for (const Word& block : enumerate_blocks(n)) {
      CHECK(word_matrix(fam, block).energy_norm < trivial);
    }
  }
}

TEST_CASE("product bound holds along words") {
  const ExtensionFamily fam3 = build_family(3);
  const double beta3 = beta(fam3).beta_norm;

  // a constant word saturates the bound exactly
  const Word zeros = parse_word_spec("per:0", 3, 5);
  const ProductBoundReport saturated = product_bound_check(fam3, zeros, 5, beta3);
  CHECK(saturated.pass);
  CHECK(saturated.max_ratio == doctest::Approx(1.0).epsilon(1e-12));

  const Word cyc = parse_word_spec("per:012", 3, 3);
  const ProductBoundReport cyc_report = product_bound_check(fam3, cyc, 3, beta3);
  CHECK(cyc_report.pass);
  CHECK(word_matrix(fam3, cyc).energy_norm <= 125.0 * beta3 * beta3 + 1e-9);

  const ExtensionFamily fam4 = build_family(4);
  const double beta4 = beta(fam4).beta_norm;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Word w = parse_word_spec("rand:" + std::to_string(seed), 4, 12);
    CHECK(product_bound_check(fam4, w, 12, beta4).pass);
  }
}

TEST_CASE("normalized prefix norms agree with direct products") {
  const ExtensionFamily fam = build_family(3);
  const Word w = parse_word_spec("rand:3", 3, 10);
  const auto norms = normalized_prefix_inv_norms(fam, w, 10);
  for (std::size_t k = 1; k <= 10; ++k) {
    const double direct = word_matrix(fam, truncate(w, k)).energy_norm;
    CHECK(norms[k - 1] * std::pow(5.0, double(k)) == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("long words do not overflow the normalized norms") {
  const ExtensionFamily fam = build_family(3);
  const Word w = parse_word_spec("per:0", 3, 600);
  const auto norms = normalized_prefix_inv_norms(fam, w, 600);
  CHECK(norms.back() == doctest::Approx(1.0).epsilon(1e-9));
}
