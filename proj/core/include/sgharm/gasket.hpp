#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sgharm/measure.hpp"
#include "sgharm/word.hpp"

namespace sgharm {

/// Vertex of the level-m approximation graph. Coordinates are barycentric
/// with respect to the boundary simplex: integer numerators over the common
/// denominator 2^m. That representation is exact, so vertex deduplication
/// never touches floating point.
struct GasketVertex {
  std::vector<std::int32_t> bary_num;
  Eigen::VectorXd coords;  // embedding in R^{N-1}, unit edge simplex
  bool boundary = false;
};

struct GasketCell {
  Word word;
  std::vector<std::int32_t> vertex_ids;  // images of p_0..p_{N-1}, in order
};

/// Level-m vertex graph of the N-vertex gasket: V_m with cell structure,
/// adjacency (two vertices are adjacent iff they share a cell) and the N
/// boundary vertices.
class GasketGraph {
 public:
  static GasketGraph build(int alphabet_size, int level);

  int alphabet_size() const { return alphabet_size_; }
  int level() const { return level_; }
  const std::vector<GasketVertex>& vertices() const { return vertices_; }
  const std::vector<GasketCell>& cells() const { return cells_; }
  const std::vector<std::pair<std::int32_t, std::int32_t>>& edges() const { return edges_; }
  std::span<const std::int32_t> boundary_ids() const { return boundary_ids_; }

  std::size_t vertex_count() const { return vertices_.size(); }

  /// Vertex ids of the cell addressed by a word of length <= level, images
  /// of p_0..p_{N-1} in order. For length == level this is the stored cell.
  std::vector<std::int32_t> cell_vertex_ids(const Word& prefix) const;

  /// Id of the vertex with the given barycentric numerators over 2^level,
  /// or -1 if absent.
  std::int32_t find_vertex(std::span<const std::int32_t> bary_num) const;

 private:
  GasketGraph() = default;

  int alphabet_size_ = kMinAlphabet;
  int level_ = 0;
  std::vector<GasketVertex> vertices_;
  std::vector<GasketCell> cells_;
  std::vector<std::pair<std::int32_t, std::int32_t>> edges_;
  std::vector<std::int32_t> boundary_ids_;
  // dedup index: packed barycentric key -> vertex id
  std::unordered_map<std::string, std::int32_t> index_;
};

GasketGraph build_graph(int alphabet_size, int level);

/// Vertices p_0..p_{N-1} of a regular unit-edge simplex in R^{N-1}, as the
/// columns of an (N-1) x N matrix. Built by Gram-Schmidt from the centered
/// simplex, so the output is deterministic.
Eigen::MatrixXd simplex_vertex_coords(int alphabet_size);

/// Level-m graph energy ((N+2)/N)^m * sum over edges of the product of
/// differences, each unordered pair counted once.
double graph_energy(const GasketGraph& g, const Eigen::VectorXd& u, const Eigen::VectorXd& v);
double graph_energy(const GasketGraph& g, const Eigen::VectorXd& u);

/// Vertex weights discretizing the measure: each vertex receives 1/N of
/// the measure of every incident cell. Weights sum to 1.
Eigen::VectorXd mass_lumping(const GasketGraph& g, const MeasureSpec& spec);

/// Verifies E_m(u) = ((N+2)/N) * sum_i E_{m-1}(u o F_i), an exact regrouping
/// of the edge sum.
struct SelfSimilarityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double deviation = 0.0;  // relative to max(1, |lhs|)
  bool pass = false;
};

SelfSimilarityReport energy_selfsimilarity_check(const GasketGraph& g, const Eigen::VectorXd& u,
                                                 double tolerance = 1e-10);

}  // namespace sgharm
