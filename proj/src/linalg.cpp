#include "skein/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include <Eigen/Eigenvalues>

#include "skein/errors.hpp"

namespace skein {

WeightedDigraph associated_graph(const CMatrix& A, double tol) {
  WeightedDigraph g;
  g.dim = static_cast<int>(A.rows());
  for (int j = 0; j < A.cols(); ++j)
    for (int i = 0; i < A.rows(); ++i)
      if (std::abs(A(i, j)) > tol) g.edges.push_back({j, i, A(i, j)});
  return g;
}

CMatrix graph_matrix(const WeightedDigraph& g) {
  CMatrix A = CMatrix::Zero(g.dim, g.dim);
  for (const Edge& e : g.edges) A(e.to, e.from) += e.weight;
  return A;
}

namespace {

// Tarjan's algorithm; returns component id per vertex.
std::vector<int> strong_components(int n, const std::vector<std::vector<int>>& adj, int& count) {
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<char> on_stack(n, 0);
  int counter = 0;
  count = 0;
  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (int u : adj[v]) {
      if (index[u] < 0) {
        visit(u);
        low[v] = std::min(low[v], low[u]);
      } else if (on_stack[u]) {
        low[v] = std::min(low[v], index[u]);
      }
    }
    if (low[v] == index[v]) {
      int u;
      do {
        u = stack.back();
        stack.pop_back();
        on_stack[u] = 0;
        comp[u] = count;
      } while (u != v);
      ++count;
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  return comp;
}

}  // namespace

std::optional<std::vector<int>> coordinate_invariant_subspace(const std::vector<WeightedDigraph>& graphs) {
  if (graphs.empty()) return std::nullopt;
  const int n = graphs.front().dim;
  std::vector<std::vector<int>> adj(n);
  for (const auto& g : graphs) {
    if (g.dim != n) throw Error(ErrorKind::BadInput, "graphs must share a vertex set");
    for (const Edge& e : g.edges)
      if (e.from != e.to) adj[e.from].push_back(e.to);
  }
  int count = 0;
  std::vector<int> comp = strong_components(n, adj, count);
  if (count <= 1) return std::nullopt;
  std::vector<char> has_exit(count, 0);
  for (int v = 0; v < n; ++v)
    for (int u : adj[v])
      if (comp[u] != comp[v]) has_exit[comp[v]] = 1;
  int chosen = -1;
  for (int v = 0; v < n && chosen < 0; ++v)
    if (!has_exit[comp[v]]) chosen = comp[v];
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (comp[v] == chosen) out.push_back(v);
  return out;
}

std::vector<CMatrix> algebra_closure_basis(const std::vector<CMatrix>& generators, double tol) {
  if (generators.empty()) throw Error(ErrorKind::BadInput, "need at least one generator");
  const Eigen::Index D = generators.front().rows();
  const Eigen::Index D2 = D * D;
  CMatrix Q(D2, D2);
  Eigen::Index rank = 0;

  auto absorb = [&](const CMatrix& M, double scale) -> bool {
    if (rank >= D2 || scale == 0.0) return false;
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(M.data(), D2) / scale;
    for (int pass = 0; pass < 2 && rank > 0; ++pass) {
      auto Qr = Q.leftCols(rank);
      v -= Qr * (Qr.adjoint() * v);
    }
    double nv = v.norm();
    if (nv <= tol) return false;
    Q.col(rank++) = v / nv;
    return true;
  };

  std::vector<CMatrix> frontier;
  CMatrix I = CMatrix::Identity(D, D);
  absorb(I, I.norm());
  frontier.push_back(I);
  for (const auto& g : generators)
    if (absorb(g, g.norm())) frontier.push_back(Eigen::Map<const CMatrix>(Q.col(rank - 1).data(), D, D));
  int sweeps = 0;
  while (!frontier.empty()) {
    if (++sweeps > D2 + 2) throw Error(ErrorKind::NoConvergence, "closure did not stabilise");
    std::vector<CMatrix> next;
    for (const auto& F : frontier)
      for (const auto& g : generators) {
        CMatrix P = g * F;
        if (absorb(P, g.norm() * F.norm())) next.push_back(Eigen::Map<const CMatrix>(Q.col(rank - 1).data(), D, D));
      }
    frontier.swap(next);
  }
  std::vector<CMatrix> out;
  for (Eigen::Index j = 0; j < rank; ++j) out.emplace_back(Eigen::Map<const CMatrix>(Q.col(j).data(), D, D));
  return out;
}

int algebra_closure_dim(const std::vector<CMatrix>& generators, double tol) {
  return static_cast<int>(algebra_closure_basis(generators, tol).size());
}

namespace {

// Column span of vectors, empty when they fill the space.
std::optional<CMatrix> proper_span(const std::vector<Eigen::VectorXcd>& vs, Eigen::Index D, double tol) {
  CMatrix A(D, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) A.col(static_cast<Eigen::Index>(j)) = vs[j];
  Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > tol * sv(0)) ++r;
  if (r == 0 || r >= D) return std::nullopt;
  return CMatrix(svd.matrixU().leftCols(r));
}

}  // namespace

std::optional<CMatrix> norton_invariant_subspace(const std::vector<CMatrix>& generators, double tol) {
  auto basis = algebra_closure_basis(generators, tol);
  const Eigen::Index D = generators.front().rows();
  if (static_cast<Eigen::Index>(basis.size()) == D * D) return std::nullopt;
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int attempt = 0; attempt < 4; ++attempt) {
    CMatrix theta = CMatrix::Zero(D, D);
    for (const auto& B : basis) theta += cplx(u(rng), u(rng)) * B;
    Eigen::ComplexEigenSolver<CMatrix> es(theta);
    Eigen::VectorXcd v = es.eigenvectors().col(0);
    std::vector<Eigen::VectorXcd> orbit;
    for (const auto& B : basis) orbit.push_back(B * v);
    if (auto W = proper_span(orbit, D, tol)) {
      if (invariance_defect(generators, *W) < std::sqrt(tol)) return W;
    }
    Eigen::ComplexEigenSolver<CMatrix> et(theta.transpose());
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < D; ++j)
      if (std::abs(et.eigenvalues()(j) - es.eigenvalues()(0)) < std::abs(et.eigenvalues()(best) - es.eigenvalues()(0)))
        best = j;
    Eigen::VectorXcd w = et.eigenvectors().col(best);
    std::vector<Eigen::VectorXcd> dual;
    for (const auto& B : basis) dual.push_back(B.transpose() * w);
    if (auto U = proper_span(dual, D, tol)) {
      Eigen::FullPivLU<CMatrix> lu(U->transpose());
      CMatrix K = lu.kernel();
      Eigen::HouseholderQR<CMatrix> qr(K);
      CMatrix W = qr.householderQ() * CMatrix::Identity(D, K.cols());
      if (invariance_defect(generators, W) < std::sqrt(tol)) return W;
    }
  }
  return std::nullopt;
}

double residual(const CMatrix& lhs, const CMatrix& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
    throw Error(ErrorKind::BadInput, "dimension mismatch");
  if (lhs.size() == 0) return 0.0;
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

CMatrix cheb_matrix(int k, const CMatrix& X) {
  const Eigen::Index D = X.rows();
  CMatrix a = 2.0 * CMatrix::Identity(D, D);
  if (k == 0) return a;
  CMatrix b = X;
  for (int j = 1; j < k; ++j) {
    CMatrix c = X * b - a;
    a = std::move(b);
    b = std::move(c);
  }
  return b;
}

ScalarPart scalar_part(const CMatrix& M) {
  ScalarPart s;
  s.value = M.trace() / static_cast<double>(M.rows());
  s.off = (M - s.value * CMatrix::Identity(M.rows(), M.cols())).cwiseAbs().maxCoeff();
  return s;
}

double invariance_defect(const std::vector<CMatrix>& generators, const CMatrix& basis) {
  Eigen::HouseholderQR<CMatrix> qr(basis);
  CMatrix Q = qr.householderQ() * CMatrix::Identity(basis.rows(), basis.cols());
  double worst = 0.0;
  for (const auto& g : generators) {
    CMatrix GQ = g * Q;
    CMatrix out = GQ - Q * (Q.adjoint() * GQ);
    worst = std::max(worst, out.cwiseAbs().maxCoeff() / std::max(1.0, g.cwiseAbs().maxCoeff()));
  }
  return worst;
}

double diagonal_gap(const CMatrix& M) {
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = i + 1; j < M.rows(); ++j) gap = std::min(gap, std::abs(M(i, i) - M(j, j)));
  return gap;
}

bool is_diagonal(const CMatrix& M, double tol) {
  for (Eigen::Index j = 0; j < M.cols(); ++j)
    for (Eigen::Index i = 0; i < M.rows(); ++i)
      if (i != j && std::abs(M(i, j)) > tol) return false;
  return true;
}

}  // namespace skein
