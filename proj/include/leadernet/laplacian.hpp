#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <leadernet/centrality.hpp>

namespace leadernet {

/// Weighted Laplacian (conductance = flow) of an undirected graph.
Eigen::SparseMatrix<double> laplacian(const IndexedGraph &g);

/// Moore-Penrose pseudo-inverse via (L + J/n)^-1 - J/n. Requires a connected graph.
Eigen::MatrixXd dense_pseudo_inverse(const IndexedGraph &g);

/// Inverse of the Laplacian with `ground` removed, embedded back with a zero row and
/// column at `ground`. Each column is one conjugate-gradient solve.
Eigen::MatrixXd grounded_inverse(const IndexedGraph &g, NodeIndex ground, const CurrentFlowOptions &options);

/// A symmetric generalized inverse P of L (L P L = L). Potential differences and effective
/// resistances computed from P are the same whichever route produced it.
Eigen::MatrixXd potential_matrix(const IndexedGraph &g, const CurrentFlowOptions &options);

} // namespace leadernet
