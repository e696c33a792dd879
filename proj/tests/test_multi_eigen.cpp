#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <omp.h>

#include <cmath>

#include "oracles.hpp"
#include "teneig/error.hpp"
#include "teneig/generators.hpp"
#include "teneig/io.hpp"
#include "teneig/multi_eigen.hpp"

using namespace teneig;

namespace {

DenseTensor sparse_random(int m, int n, double density, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> e(checked_entry_count(m, n));
  for (double& v : e) v = u(rng) < density ? u(rng) : 0.0;
  return DenseTensor(m, n, std::move(e));
}

EigenPair pair_of(double lambda, Vector x) {
  EigenPair p;
  p.lambda = lambda;
  p.x = std::move(x);
  return p;
}

}  // namespace

TEST_CASE("irreducibility agrees with the subset definition") {
  std::mt19937_64 rng(41);
  int irreducible = 0;
  int weak = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + trial % 3;
    const int n = 2 + trial % 4;
    const double density = 0.05 + 0.1 * (trial % 5);
    const DenseTensor a = sparse_random(m, n, density, rng);
    CAPTURE(trial);
    const bool exact = oracle::brute_irreducible(a);
    CHECK(is_irreducible(a) == exact);
    CHECK(is_weakly_irreducible(a) == oracle::brute_weakly_irreducible(a));
    irreducible += exact;
    weak += oracle::brute_weakly_irreducible(a);
  }
  // Both outcomes must be exercised for the comparison to mean anything.
  CHECK(irreducible > 20);
  CHECK(irreducible < 280);
  CHECK(weak > irreducible);
}

TEST_CASE("irreducibility of the named tensors") {
  CHECK(is_irreducible(gen_example_3eig()));
  CHECK(is_irreducible(gen_pagerank(0.9)));
  for (int m : {3, 4}) {
    for (int n : {6, 10}) {
      const DenseTensor l = gen_signless_laplacian(m, n);
      CHECK_FALSE(is_irreducible(l));
      CHECK(is_weakly_irreducible(l));
    }
  }
  const DenseTensor diag = degree_tensor(cyclic_hypergraph(3, 5));
  CHECK_FALSE(is_irreducible(diag));
  CHECK_FALSE(is_weakly_irreducible(diag));
  CHECK(is_irreducible(DenseTensor(3, 1, {2.0})));
  // Cyclic permutation matrix: irreducible; upper triangular: reducible.
  CHECK(is_irreducible(DenseTensor(2, 3, {0, 1, 0, 0, 0, 1, 1, 0, 0})));
  CHECK_FALSE(is_irreducible(DenseTensor(2, 3, {1, 1, 1, 0, 1, 1, 0, 0, 1})));
}

TEST_CASE("EigenSet deduplicates and canonicalizes signs") {
  EigenSet set(1e-8);
  Vector x(2);
  x << 0.6, 0.8;
  CHECK(set.insert(pair_of(2.0, x)));
  CHECK_FALSE(set.insert(pair_of(2.0 + 1e-10, x)));
  CHECK_FALSE(set.insert(pair_of(2.0, -x)));
  CHECK(set.insert(pair_of(2.0 + 1e-6, x)));
  CHECK(set.size() == 2);
  Vector y(2);
  y << -0.8, 0.6;
  CHECK(dedupe_insert(set, pair_of(1.0, y), Provenance{3, Direction::backward, 0, 2}));
  CHECK(set.pairs().back().x[0] > 0);
  CHECK(set.provenance().back().start_index == 3);
  CHECK(set.find(pair_of(1.0, -y)) == 2);
  CHECK(set.find(pair_of(5.0, y)) == -1);
}

TEST_CASE("odd count on the three-eigenpair tensor") {
  const DenseTensor a = gen_example_3eig();
  const OddZResult r = find_odd_z(a, 8, 1);
  REQUIRE(r.set.size() == 3);
  CHECK(r.complete);
  CHECK(r.skipped.empty());
  CHECK(r.warnings.empty());
  int sum = 0;
  for (const EigenPair& p : r.set.pairs()) {
    sum += p.det_sign;
    CHECK(p.det_sign == det_sign(a, p));
    CHECK(p.residual <= 1e-10);
    CHECK((p.x.array() > 0).all());
  }
  CHECK(sum == -1);
  CHECK(r.forward_tracks == 8);
  CHECK(r.backward_tracks > 0);
}

TEST_CASE("endpoints carry the sign of their track direction") {
  const DenseTensor a = gen_example_3eig();
  auto sign_warnings = [&](const OddZConfig& cfg) {
    int count = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      for (const std::string& w : find_odd_z(a, 8, seed, cfg).warnings) {
        count += w.rfind("det sign", 0) == 0;
      }
    }
    return count;
  };
  CHECK(sign_warnings({}) == 0);
  OddZConfig unguarded;
  unguarded.sign_retries = 0;
  CHECK(sign_warnings(unguarded) > 0);
}

TEST_CASE("k = 1 still yields an odd set") {
  const OddZResult r = find_odd_z(gen_example_3eig(), 1, 5);
  CHECK(r.set.size() == 1);
  CHECK(r.backward_tracks == 0);
}

TEST_CASE("find_odd_z output is independent of the thread count") {
  const DenseTensor a = gen_pagerank(0.99);
  omp_set_num_threads(1);
  const std::string one = odd_z_json(find_odd_z(a, 4, 9), 4, 9).dump();
  omp_set_num_threads(3);
  const std::string three = odd_z_json(find_odd_z(a, 4, 9), 4, 9).dump();
  omp_set_num_threads(1);
  CHECK(one == three);
}

TEST_CASE("find_odd_z preconditions") {
  try {
    find_odd_z(gen_signless_laplacian(3, 6), 4, 1);
    FAIL("expected precondition error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::precondition);
  }
  CHECK_THROWS_AS(find_odd_z(gen_example_3eig(), 0, 1), Error);
  std::vector<double> e(8, 1.0);
  e[0] = -1.0;
  CHECK_THROWS_AS(find_odd_z(DenseTensor(3, 2, e), 2, 1), Error);
}

TEST_CASE("det sign of a known pair") {
  const DenseTensor a = gen_example_3eig();
  Vector x(2);
  x << std::sqrt(0.5), std::sqrt(0.5);
  CHECK(det_sign(a, pair_of(2 + 2 / std::sqrt(3.0), x)) == 1);
  x << std::sqrt(3.0) / 2, 0.5;
  CHECK(det_sign(a, pair_of(11 / (2 * std::sqrt(3.0)), x)) == -1);
}
