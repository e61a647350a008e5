#include "sgharm/gasket.hpp"

#include <cmath>
#include <cstring>

#include "sgharm/errors.hpp"

namespace sgharm {

namespace {

std::string pack_key(std::span<const std::int32_t> bary) {
  std::string key(bary.size() * sizeof(std::int32_t), '\0');
  std::memcpy(key.data(), bary.data(), key.size());
  return key;
}

}  // namespace

Eigen::MatrixXd simplex_vertex_coords(int alphabet_size) {
  const int n = alphabet_size;
  // centered simplex columns c_i = (e_i - 1/N) / sqrt(2) in R^N; pairwise
  // distances are 1. Gram-Schmidt on the first N-1 columns gives an
  // orthonormal basis of their span.
  Eigen::MatrixXd centered(n, n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) {
      centered(r, c) = ((r == c ? 1.0 : 0.0) - 1.0 / n) / std::sqrt(2.0);
    }
  }
  Eigen::MatrixXd basis(n, n - 1);
  for (int c = 0; c < n - 1; ++c) {
    Eigen::VectorXd v = centered.col(c);
    for (int k = 0; k < c; ++k) v -= basis.col(k).dot(v) * basis.col(k);
    // repeated for numerical orthogonality
    for (int k = 0; k < c; ++k) v -= basis.col(k).dot(v) * basis.col(k);
    basis.col(c) = v / v.norm();
  }
  return basis.transpose() * centered;  // (N-1) x N, columns p_i
}

GasketGraph GasketGraph::build(int alphabet_size, int level) {
  const int n = alphabet_size;
  if (n < kMinAlphabet || n > kMaxAlphabet) {
    throw ValidationError("build_graph: alphabet size outside [3, 10]");
  }
  if (level < 0 || level > 12) {
    throw ValidationError("build_graph: level outside [0, 12]");
  }
  double cell_estimate = 1.0;
  for (int i = 0; i < level; ++i) cell_estimate *= n;
  if (cell_estimate > double(1 << 24)) {
    throw ValidationError("build_graph: N^m exceeds the supported cell budget (2^24)");
  }

  GasketGraph g;
  g.alphabet_size_ = n;
  g.level_ = level;
  const std::size_t cell_total = static_cast<std::size_t>(cell_estimate);
  g.cells_.reserve(cell_total);
  g.vertices_.reserve(cell_total * static_cast<std::size_t>(n) / 2 + static_cast<std::size_t>(n));

  const Eigen::MatrixXd simplex = simplex_vertex_coords(n);
  const std::int32_t denom = std::int32_t(1) << level;

  auto intern = [&](const std::vector<std::int32_t>& bary) -> std::int32_t {
    auto [it, inserted] = g.index_.try_emplace(pack_key(bary), std::int32_t(g.vertices_.size()));
    if (inserted) {
      GasketVertex v;
      v.bary_num = bary;
      Eigen::VectorXd b(n);
      bool is_corner = false;
      for (int k = 0; k < n; ++k) {
        b[k] = static_cast<double>(bary[k]) / denom;
        if (bary[k] == denom) is_corner = true;
      }
      v.coords = simplex * b;
      v.boundary = is_corner;
      g.vertices_.push_back(std::move(v));
    }
    return it->second;
  };

  // DFS over cell words; `corners[k]` holds the barycentric numerators of
  // the image of p_k, at denominator 2^depth. Child i replaces each corner
  // q with (q + corner_i) at doubled denominator.
  std::vector<std::uint8_t> word_stack;
  std::vector<std::vector<std::int32_t>> corners(n, std::vector<std::int32_t>(n, 0));
  for (int k = 0; k < n; ++k) corners[k][k] = 1;

  auto emit_cell = [&](const std::vector<std::vector<std::int32_t>>& cs) {
    GasketCell cell;
    cell.word = Word(word_stack, n);
    cell.vertex_ids.reserve(n);
    for (int k = 0; k < n; ++k) cell.vertex_ids.push_back(intern(cs[k]));
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        g.edges_.emplace_back(cell.vertex_ids[a], cell.vertex_ids[b]);
      }
    }
    g.cells_.push_back(std::move(cell));
  };

  auto rec = [&](auto&& self, const std::vector<std::vector<std::int32_t>>& cs, int depth) -> void {
    if (depth == level) {
      emit_cell(cs);
      return;
    }
    for (int i = 0; i < n; ++i) {
      std::vector<std::vector<std::int32_t>> child(cs);
      for (int k = 0; k < n; ++k) {
        for (int c = 0; c < n; ++c) child[k][c] = cs[k][c] + cs[i][c];
      }
      word_stack.push_back(static_cast<std::uint8_t>(i));
      self(self, child, depth + 1);
      word_stack.pop_back();
    }
  };

  if (level == 0) {
    std::vector<std::vector<std::int32_t>> cs(corners);
    emit_cell(cs);
  } else {
    rec(rec, corners, 0);
  }

  for (int k = 0; k < n; ++k) {
    std::vector<std::int32_t> bary(n, 0);
    bary[k] = denom;
    g.boundary_ids_.push_back(g.find_vertex(bary));
  }
  return g;
}

GasketGraph build_graph(int alphabet_size, int level) {
  return GasketGraph::build(alphabet_size, level);
}

std::int32_t GasketGraph::find_vertex(std::span<const std::int32_t> bary_num) const {
  const auto it = index_.find(pack_key(bary_num));
  return it == index_.end() ? -1 : it->second;
}

std::vector<std::int32_t> GasketGraph::cell_vertex_ids(const Word& prefix) const {
  if (static_cast<int>(prefix.size()) > level_) {
    throw ValidationError("cell_vertex_ids: word longer than the graph level");
  }
  const int n = alphabet_size_;
  std::vector<std::int32_t> ids;
  ids.reserve(n);
  for (int k = 0; k < n; ++k) {
    // barycentric numerators of F_prefix(p_k) at denominator 2^|prefix|
    std::vector<std::int64_t> num(n, 0);
    num[k] = 1;
    std::int64_t den = 1;
    for (std::size_t pos = prefix.size(); pos > 0; --pos) {
      num[prefix[pos - 1]] += den;
      den *= 2;
    }
    const std::int64_t scale = (std::int64_t(1) << level_) / den;
    std::vector<std::int32_t> bary(n);
    for (int c = 0; c < n; ++c) bary[c] = static_cast<std::int32_t>(num[c] * scale);
    const std::int32_t id = find_vertex(bary);
    if (id < 0) throw ConsistencyError("cell_vertex_ids: cell vertex missing from the graph");
    ids.push_back(id);
  }
  return ids;
}

double graph_energy(const GasketGraph& g, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  const auto count = static_cast<Eigen::Index>(g.vertex_count());
  if (u.size() != count || v.size() != count) {
    throw ValidationError("graph_energy: value vector size does not match the vertex count");
  }
  double sum = 0.0;
  for (const auto& [x, y] : g.edges()) sum += (u[x] - u[y]) * (v[x] - v[y]);
  const double factor = static_cast<double>(g.alphabet_size() + 2) / g.alphabet_size();
  return std::pow(factor, g.level()) * sum;
}

double graph_energy(const GasketGraph& g, const Eigen::VectorXd& u) {
  return graph_energy(g, u, u);
}

Eigen::VectorXd mass_lumping(const GasketGraph& g, const MeasureSpec& spec) {
  spec.validate();
  if (spec.alphabet_size != g.alphabet_size()) {
    throw ValidationError("mass_lumping: measure alphabet does not match the graph");
  }
  if (g.level() % spec.block_len != 0) {
    throw ValidationError("mass_lumping: graph level must be a multiple of the block length");
  }
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.vertex_count()));
  const double inv_n = 1.0 / g.alphabet_size();
  for (const GasketCell& cell : g.cells()) {
    const double cell_mass =
        g.level() == 0 ? 1.0 : measure_of_prefix(spec, cell.word, cell.word.size());
    for (std::int32_t id : cell.vertex_ids) mu[id] += cell_mass * inv_n;
  }
  return mu;
}

SelfSimilarityReport energy_selfsimilarity_check(const GasketGraph& g, const Eigen::VectorXd& u,
                                                 double tolerance) {
  if (g.level() < 1) throw ValidationError("energy_selfsimilarity_check: level must be >= 1");
  const int n = g.alphabet_size();
  SelfSimilarityReport report;
  report.lhs = graph_energy(g, u);

  const GasketGraph coarse = GasketGraph::build(n, g.level() - 1);
  const std::int32_t half = std::int32_t(1) << (g.level() - 1);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    // u o F_i on the coarse graph: F_i doubles the denominator and shifts
    // by the i-th corner.
    Eigen::VectorXd ui(static_cast<Eigen::Index>(coarse.vertex_count()));
    for (std::size_t vid = 0; vid < coarse.vertex_count(); ++vid) {
      std::vector<std::int32_t> bary = coarse.vertices()[vid].bary_num;
      bary[i] += half;
      const std::int32_t fine_id = g.find_vertex(bary);
      if (fine_id < 0) throw ConsistencyError("energy_selfsimilarity_check: image vertex missing");
      ui[static_cast<Eigen::Index>(vid)] = u[fine_id];
    }
    sum += graph_energy(coarse, ui);
  }
  report.rhs = sum * static_cast<double>(n + 2) / n;
  report.deviation = std::abs(report.lhs - report.rhs) / std::max(1.0, std::abs(report.lhs));
  report.pass = report.deviation <= tolerance;
  return report;
}

}  // namespace sgharm
