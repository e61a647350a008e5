#pragma once

#include <string>

#include "sgharm/extension.hpp"
#include "sgharm/gasket.hpp"

namespace sgharm {

/// Full, reduced and inverse-reduced matrices plus the Gram matrix, each
/// row as exact fraction strings "p/q" and as decimal strings.
std::string family_to_json(const ExtensionFamily& fam);

/// Vertices (fraction-string barycentric coordinates, embedding, boundary
/// flag), cells (word and vertex ids) and edges.
std::string graph_to_json(const GasketGraph& g);

/// CSV with header "vertex_id,value", one row per vertex.
std::string vertex_values_to_csv(const Eigen::VectorXd& values);

}  // namespace sgharm
