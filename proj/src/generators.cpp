#include "teneig/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string_view>

#include "teneig/error.hpp"

namespace teneig {

void HypergraphSpec::validate() const {
  if (m < 2) throw Error(ErrorKind::input, "hypergraph: m must be >= 2");
  if (n < m) throw Error(ErrorKind::input, "hypergraph: need n >= m");
  for (const auto& e : edges) {
    if (static_cast<int>(e.size()) != m) {
      throw Error(ErrorKind::input, "hypergraph: edge size differs from m");
    }
    std::vector<int> sorted = e;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorKind::input, "hypergraph: repeated vertex in an edge");
    }
    if (sorted.front() < 1 || sorted.back() > n) {
      throw Error(ErrorKind::input, "hypergraph: vertex out of range");
    }
  }
}

std::vector<int> HypergraphSpec::degrees() const {
  std::vector<int> d(static_cast<std::size_t>(n), 0);
  for (const auto& e : edges) {
    for (int v : e) ++d[v - 1];
  }
  return d;
}

HypergraphSpec cyclic_hypergraph(int m, int n) {
  HypergraphSpec g{m, n, {}};
  if (m < 2 || n < m) {
    throw Error(ErrorKind::input, "cyclic hypergraph needs m >= 2 and n >= m");
  }
  for (int i = m - 1; i <= n; ++i) {
    std::vector<int> e;
    for (int v = i - m + 2; v <= i + 1; ++v) e.push_back(v == n + 1 ? 1 : v);
    g.edges.push_back(std::move(e));
  }
  g.validate();
  return g;
}

DenseTensor degree_tensor(const HypergraphSpec& g) {
  g.validate();
  const std::size_t size = checked_entry_count(g.m, g.n);
  std::vector<double> entries(size, 0.0);
  const std::vector<int> d = g.degrees();
  // Stride between consecutive diagonal entries: 1 + n + ... + n^{m-1}.
  std::size_t stride = 0;
  for (std::size_t p = 1, k = 0; k < static_cast<std::size_t>(g.m);
       ++k, p *= static_cast<std::size_t>(g.n)) {
    stride += p;
  }
  for (int i = 0; i < g.n; ++i) entries[i * stride] = d[i];
  return DenseTensor(g.m, g.n, std::move(entries), Symmetry::symmetric);
}

namespace {

void add_adjacency(const HypergraphSpec& g, double w,
                   std::vector<double>& entries) {
  double factorial = 1.0;
  for (int k = 2; k < g.m; ++k) factorial *= k;
  const double value = w / factorial;
  std::vector<int> idx(static_cast<std::size_t>(g.m));
  for (const auto& e : g.edges) {
    std::vector<int> perm = e;
    std::sort(perm.begin(), perm.end());
    do {
      std::size_t off = 0;
      for (int v : perm) off = off * static_cast<std::size_t>(g.n) + (v - 1);
      entries[off] += value;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

}  // namespace

DenseTensor adjacency_tensor(const HypergraphSpec& g) {
  g.validate();
  std::vector<double> entries(checked_entry_count(g.m, g.n), 0.0);
  add_adjacency(g, 1.0, entries);
  return DenseTensor(g.m, g.n, std::move(entries), Symmetry::symmetric);
}

DenseTensor hypergraph_laplacian(const HypergraphSpec& g, double w) {
  if (!(w > 0.0) || !std::isfinite(w)) {
    throw Error(ErrorKind::input, "laplacian weight w must be > 0");
  }
  const DenseTensor d = degree_tensor(g);
  std::vector<double> entries(d.entries().begin(), d.entries().end());
  add_adjacency(g, w, entries);
  return DenseTensor(g.m, g.n, std::move(entries), Symmetry::symmetric);
}

DenseTensor gen_signless_laplacian(int m, int n) {
  return hypergraph_laplacian(cyclic_hypergraph(m, n), 1.0);
}

DenseTensor gen_scaled_laplacian(double w, int m, int n) {
  if (!(w > 0.0)) throw Error(ErrorKind::input, "laplacian weight w must be > 0");
  return hypergraph_laplacian(cyclic_hypergraph(m, n), w);
}

DenseTensor pagerank_transition() {
  // Row i of the 6 x 36 unfolding [P(:,:,1) | ... | P(:,:,6)].
  static constexpr std::array<std::string_view, 6> rows = {
      "000000000001100000001010011000000001",
      "000000001000010000000000010010000000",
      "000000000000100000000000100010110010",
      "000000000000100000000101000000010100",
      "000000010001000000010000000100001010",
      "111111100110101111100000000001000000",
  };
  constexpr int n = 6;
  std::vector<double> entries(n * n * n, 0.0);
  for (int col = 0; col < n * n; ++col) {
    const int k = col / n;
    const int j = col % n;
    int sum = 0;
    for (int i = 0; i < n; ++i) sum += rows[i][col] == '1';
    if (sum == 0) {
      throw Error(ErrorKind::anomaly, "pagerank: empty transition column");
    }
    for (int i = 0; i < n; ++i) {
      if (rows[i][col] == '1') entries[(i * n + j) * n + k] = 1.0 / sum;
    }
  }
  return DenseTensor(3, n, std::move(entries));
}

DenseTensor gen_pagerank(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::input, "pagerank: alpha must lie in (0, 1)");
  }
  const DenseTensor p = pagerank_transition();
  std::vector<double> entries(p.size());
  const double teleport = (1.0 - alpha) / 6.0;
  for (std::size_t q = 0; q < entries.size(); ++q) {
    entries[q] = alpha * p.entries()[q] + teleport;
  }
  return DenseTensor(3, 6, std::move(entries));
}

DenseTensor gen_example_3eig() {
  std::vector<double> entries(16, 0.0);
  auto set = [&](int i, int j, int k, int l, double v) {
    entries[((i * 2 + j) * 2 + k) * 2 + l] = v;
  };
  const double diag = 4.0 / std::sqrt(3.0);
  set(0, 0, 0, 0, diag);
  set(1, 1, 1, 1, diag);
  for (int q = 0; q < 4; ++q) {
    std::array<int, 4> ones{0, 0, 0, 0};
    std::array<int, 4> twos{1, 1, 1, 1};
    ones[q] = 1;
    twos[q] = 0;
    set(ones[0], ones[1], ones[2], ones[3], 1.0);
    set(twos[0], twos[1], twos[2], twos[3], 1.0);
  }
  return DenseTensor(4, 2, std::move(entries), Symmetry::symmetric);
}

}  // namespace teneig
