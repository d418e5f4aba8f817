#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "skein/scalars.hpp"

namespace skein {

using CMatrix = Eigen::MatrixXcd;

struct Edge {
  int from;
  int to;
  cplx weight;
};

struct WeightedDigraph {
  int dim = 0;
  std::vector<Edge> edges;
};

struct Subspace {
  CMatrix basis;             ///< columns span the subspace
  std::vector<int> coords;   ///< coordinate labels when it is a coordinate subspace
};

struct Reducibility {
  bool reducible = false;
  bool fast_path = false;
  int oracle_dim = 0;
  std::optional<bool> graph_reducible;  ///< graph verdict on the base matrices when applicable
  std::optional<Subspace> witness;
  double witness_defect = 0;
};

/// Edge j -> i whenever |A(i, j)| > tol.
WeightedDigraph associated_graph(const CMatrix& A, double tol);
/// Matrix whose associated graph is g.
CMatrix graph_matrix(const WeightedDigraph& g);

/// A proper nonempty vertex set closed under the union of the graphs, if any.
std::optional<std::vector<int>> coordinate_invariant_subspace(const std::vector<WeightedDigraph>& graphs);

/// Dimension of the unital algebra generated by the matrices.
int algebra_closure_dim(const std::vector<CMatrix>& generators, double tol = 1e-7);

/// Orthonormal (Frobenius) spanning set of the unital algebra generated by the matrices.
std::vector<CMatrix> algebra_closure_basis(const std::vector<CMatrix>& generators, double tol = 1e-7);

/// Proper nonzero invariant subspace found by Norton's test on a pseudo-random
/// algebra element. Columns span the subspace. May miss reducible modules with
/// repeated composition factors.
std::optional<CMatrix> norton_invariant_subspace(const std::vector<CMatrix>& generators,
                                                 double tol = 1e-7);

/// Max entrywise absolute difference.
double residual(const CMatrix& lhs, const CMatrix& rhs);

/// T_k applied to a square matrix.
CMatrix cheb_matrix(int k, const CMatrix& X);

struct ScalarPart {
  cplx value;
  double off;  ///< max deviation from value * I
};
ScalarPart scalar_part(const CMatrix& M);

/// Max deviation of the columns of basis from being carried into their span.
double invariance_defect(const std::vector<CMatrix>& generators, const CMatrix& basis);

/// Smallest pairwise distance between diagonal entries.
double diagonal_gap(const CMatrix& M);
bool is_diagonal(const CMatrix& M, double tol);

}  // namespace skein
