#pragma once

#include <Eigen/Dense>

#include "sgharm/extension.hpp"
#include "sgharm/gasket.hpp"
#include "sgharm/measure.hpp"

namespace sgharm {

/// Discrete Dirichlet problem on a level-m graph: find u with the given
/// boundary values such that E_m(u, v) = -sum_x rhs(x) v(x) mu(x) for every
/// hat function v at an interior vertex, where mu is the mass lumping of
/// the measure.
struct DirichletProblem {
  MeasureSpec measure;
  Eigen::VectorXd rhs;       // one value per vertex
  Eigen::VectorXd boundary;  // N values on p_0..p_{N-1}
};

/// Values of the harmonic function with the given boundary data on every
/// vertex of the graph, computed cell by cell with the extension matrices.
Eigen::VectorXd harmonic_extend(const ExtensionFamily& fam, const Eigen::VectorXd& boundary,
                                const GasketGraph& g);

/// Sparse SPD solve of the interior system. With rhs = 0 this reproduces
/// harmonic_extend.
Eigen::VectorXd solve_dirichlet(const GasketGraph& g, const DirichletProblem& problem);

/// Largest violation of the weak equation over interior hat functions:
/// max_x | E_m(u, hat_x) + rhs(x) mu(x) |. Solver output stays below 1e-9.
double laplacian_residual(const GasketGraph& g, const DirichletProblem& problem,
                          const Eigen::VectorXd& u);

}  // namespace sgharm
