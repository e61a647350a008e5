#include "sgharm/dirichlet.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <cmath>
#include <vector>

#include "sgharm/errors.hpp"

namespace sgharm {

namespace {

void check_problem(const GasketGraph& g, const DirichletProblem& p) {
  const auto count = static_cast<Eigen::Index>(g.vertex_count());
  if (p.rhs.size() != count) {
    throw ValidationError("dirichlet: rhs size does not match the vertex count");
  }
  if (p.boundary.size() != g.alphabet_size()) {
    throw ValidationError("dirichlet: boundary must have one value per corner");
  }
  if (!p.rhs.allFinite() || !p.boundary.allFinite()) {
    throw ValidationError("dirichlet: non-finite input values");
  }
}

}  // namespace

Eigen::VectorXd harmonic_extend(const ExtensionFamily& fam, const Eigen::VectorXd& boundary,
                                const GasketGraph& g) {
  if (fam.alphabet_size != g.alphabet_size()) {
    throw ValidationError("harmonic_extend: family and graph alphabet sizes differ");
  }
  if (boundary.size() != g.alphabet_size()) {
    throw ValidationError("harmonic_extend: boundary must have one value per corner");
  }
  Eigen::VectorXd values(static_cast<Eigen::Index>(g.vertex_count()));

  // Cells are stored in DFS (lexicographic) order, so a manual stack of
  // boundary-value vectors walks them in the same order: cell w.i carries
  // A_i times the values of cell w.
  std::size_t next_cell = 0;
  auto rec = [&](auto&& self, const Eigen::VectorXd& cell_values, int depth) -> void {
    if (depth == g.level()) {
      const GasketCell& cell = g.cells()[next_cell++];
      for (int k = 0; k < g.alphabet_size(); ++k) values[cell.vertex_ids[k]] = cell_values[k];
      return;
    }
    for (int i = 0; i < g.alphabet_size(); ++i) {
      self(self, Eigen::VectorXd(fam.full[i] * cell_values), depth + 1);
    }
  };
  rec(rec, boundary, 0);
  return values;
}

Eigen::VectorXd solve_dirichlet(const GasketGraph& g, const DirichletProblem& problem) {
  check_problem(g, problem);
  const Eigen::VectorXd mu = mass_lumping(g, problem.measure);
  const double scale =
      std::pow(static_cast<double>(g.alphabet_size() + 2) / g.alphabet_size(), g.level());

  const auto total = static_cast<std::int32_t>(g.vertex_count());
  std::vector<std::int32_t> interior_index(total, -1);
  std::vector<double> boundary_value(total, 0.0);
  std::vector<bool> is_boundary(total, false);
  for (int k = 0; k < g.alphabet_size(); ++k) {
    const std::int32_t id = g.boundary_ids()[k];
    is_boundary[id] = true;
    boundary_value[id] = problem.boundary[k];
  }
  std::int32_t interior_count = 0;
  for (std::int32_t v = 0; v < total; ++v) {
    if (!is_boundary[v]) interior_index[v] = interior_count++;
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(g.edges().size() * 4);
  Eigen::VectorXd rhs(interior_count);
  for (std::int32_t v = 0; v < total; ++v) {
    if (interior_index[v] >= 0) rhs[interior_index[v]] = -problem.rhs[v] * mu[v];
  }
  for (const auto& [x, y] : g.edges()) {
    for (const auto& [a, b] : {std::pair{x, y}, std::pair{y, x}}) {
      const std::int32_t ia = interior_index[a];
      if (ia < 0) continue;
      triplets.emplace_back(ia, ia, scale);
      const std::int32_t ib = interior_index[b];
      if (ib >= 0) {
        triplets.emplace_back(ia, ib, -scale);
      } else {
        rhs[ia] += scale * boundary_value[b];
      }
    }
  }

  Eigen::SparseMatrix<double> stiffness(interior_count, interior_count);
  stiffness.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(stiffness);
  if (solver.info() != Eigen::Success) {
    throw ConsistencyError("solve_dirichlet: factorization failed on an SPD system");
  }
  const Eigen::VectorXd interior = solver.solve(rhs);
  if (solver.info() != Eigen::Success) {
    throw ConsistencyError("solve_dirichlet: back substitution failed");
  }

  Eigen::VectorXd u(total);
  for (std::int32_t v = 0; v < total; ++v) {
    u[v] = interior_index[v] >= 0 ? interior[interior_index[v]] : boundary_value[v];
  }
  return u;
}

double laplacian_residual(const GasketGraph& g, const DirichletProblem& problem,
                          const Eigen::VectorXd& u) {
  check_problem(g, problem);
  const auto total = static_cast<Eigen::Index>(g.vertex_count());
  if (u.size() != total) {
    throw ValidationError("laplacian_residual: solution size does not match the vertex count");
  }
  const Eigen::VectorXd mu = mass_lumping(g, problem.measure);
  const double scale =
      std::pow(static_cast<double>(g.alphabet_size() + 2) / g.alphabet_size(), g.level());

  // E_m(u, hat_x) accumulated per vertex from the edge list
  Eigen::VectorXd laplacian = Eigen::VectorXd::Zero(total);
  for (const auto& [x, y] : g.edges()) {
    const double diff = u[x] - u[y];
    laplacian[x] += scale * diff;
    laplacian[y] -= scale * diff;
  }

  std::vector<bool> is_boundary(static_cast<std::size_t>(total), false);
  for (const std::int32_t id : g.boundary_ids()) is_boundary[static_cast<std::size_t>(id)] = true;

  double residual = 0.0;
  for (Eigen::Index v = 0; v < total; ++v) {
    if (is_boundary[static_cast<std::size_t>(v)]) continue;
    residual = std::max(residual, std::abs(laplacian[v] + problem.rhs[v] * mu[v]));
  }
  return residual;
}

}  // namespace sgharm
