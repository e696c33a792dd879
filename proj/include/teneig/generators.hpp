#pragma once

#include <vector>

#include "teneig/tensor.hpp"

namespace teneig {

/// m-uniform hypergraph on vertices 1..n.
struct HypergraphSpec {
  int m = 0;
  int n = 0;
  std::vector<std::vector<int>> edges;  ///< 1-based vertex sets of size m

  /// Throws ErrorKind::input unless m >= 2, n >= m and every edge has m
  /// distinct vertices in 1..n.
  void validate() const;
  std::vector<int> degrees() const;
};

/// Edges {i-m+2, ..., i+1} for i = m-1..n with n+1 identified with 1.
HypergraphSpec cyclic_hypergraph(int m, int n);

/// Diagonal tensor of vertex degrees.
DenseTensor degree_tensor(const HypergraphSpec& g);

/// Adjacency tensor: 1/(m-1)! at every permutation of every edge, so row
/// sums equal degrees.
DenseTensor adjacency_tensor(const HypergraphSpec& g);

/// D + w C for a hypergraph.
DenseTensor hypergraph_laplacian(const HypergraphSpec& g, double w);

/// D + C of the cyclic m-uniform hypergraph on n vertices.
DenseTensor gen_signless_laplacian(int m, int n);

/// D + w C of the cyclic m-uniform hypergraph on n vertices; w > 0.
DenseTensor gen_scaled_laplacian(double w, int m, int n);

/// The 6-state transition tensor of the multilinear PageRank example with
/// every column P(:, j, k) normalized to sum to 1.
DenseTensor pagerank_transition();

/// alpha P + (1 - alpha) v o e o e with v = e / 6; 0 < alpha < 1.
DenseTensor gen_pagerank(double alpha);

/// Symmetric 4th-order 2-dimensional tensor with exactly three positive
/// Z-eigenpairs: diagonal 4/sqrt(3) and 1 at every permutation of (1,1,1,2)
/// and (1,2,2,2).
DenseTensor gen_example_3eig();

}  // namespace teneig
