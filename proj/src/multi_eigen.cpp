#include "teneig/multi_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "teneig/error.hpp"
#include "teneig/linalg.hpp"

namespace teneig {

int EigenSet::find(const EigenPair& pair) const {
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const EigenPair& p = pairs_[i];
    if (p.x.size() != pair.x.size()) continue;
    if ((p.x - pair.x).norm() + std::abs(p.lambda - pair.lambda) <
        dedupe_tol_) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

bool EigenSet::insert(EigenPair pair, Provenance provenance) {
  for (Eigen::Index i = 0; i < pair.x.size(); ++i) {
    if (pair.x[i] != 0.0) {
      if (pair.x[i] < 0.0) pair.x = -pair.x;
      break;
    }
  }
  if (find(pair) >= 0) return false;
  pairs_.push_back(std::move(pair));
  provenance_.push_back(provenance);
  return true;
}

bool dedupe_insert(EigenSet& set, const EigenPair& pair, Provenance provenance) {
  return set.insert(pair, provenance);
}

int det_sign(const DenseTensor& a, const EigenPair& pair) {
  const int n = a.dim();
  Matrix j = Matrix::Zero(n + 1, n + 1);
  j.topLeftCorner(n, n) = derivative(a, pair.x);
  j.topLeftCorner(n, n).diagonal().array() -= pair.lambda;
  j.topRightCorner(n, 1) = -pair.x;
  j.bottomLeftCorner(1, n) = 2.0 * pair.x.transpose();
  return DenseLU(j).det_sign();
}

namespace {

// Nonzero hyperarcs (head, distinct tail indices) of a tensor's support.
std::vector<std::pair<int, std::vector<int>>> support_arcs(
    const DenseTensor& a) {
  const int n = a.dim();
  std::vector<std::pair<int, std::vector<int>>> arcs;
  std::vector<int> tail(static_cast<std::size_t>(a.order() - 1));
  for (int i = 0; i < n; ++i) {
    std::set<std::vector<int>> seen;
    std::fill(tail.begin(), tail.end(), 0);
    for (double v : a.slice(i)) {
      if (v != 0.0) {
        std::vector<int> key = tail;
        std::sort(key.begin(), key.end());
        key.erase(std::unique(key.begin(), key.end()), key.end());
        seen.insert(std::move(key));
      }
      next_index(tail, n);
    }
    for (const auto& s : seen) arcs.emplace_back(i, s);
  }
  return arcs;
}

}  // namespace

bool is_irreducible(const DenseTensor& a) {
  // A set U is "closed" when no i outside U has a nonzero entry whose tail
  // lies inside U; the complement of a closed nonempty proper U is exactly a
  // reducing set S. Closed sets are intersection-stable, so A is reducible
  // iff the closure of some singleton {j} is proper. Closures are computed
  // by forward chaining with per-arc countdowns.
  const int n = a.dim();
  if (n == 1) return true;
  auto arcs = support_arcs(a);
  // Arcs whose head is in their own tail can never extend a closure.
  std::erase_if(arcs, [](const auto& arc) {
    return std::binary_search(arc.second.begin(), arc.second.end(), arc.first);
  });
  std::vector<std::vector<int>> by_vertex(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    for (int v : arcs[k].second) by_vertex[v].push_back(static_cast<int>(k));
  }
  std::vector<int> remaining(arcs.size());
  std::vector<char> in_closure(static_cast<std::size_t>(n));
  std::vector<int> queue;
  for (int j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < arcs.size(); ++k) {
      remaining[k] = static_cast<int>(arcs[k].second.size());
    }
    std::fill(in_closure.begin(), in_closure.end(), 0);
    queue.assign(1, j);
    in_closure[j] = 1;
    int size = 1;
    while (!queue.empty()) {
      const int v = queue.back();
      queue.pop_back();
      for (int k : by_vertex[v]) {
        if (--remaining[k] == 0) {
          const int head = arcs[k].first;
          if (!in_closure[head]) {
            in_closure[head] = 1;
            ++size;
            queue.push_back(head);
          }
        }
      }
    }
    if (size < n) return false;
  }
  return true;
}

bool is_weakly_irreducible(const DenseTensor& a) {
  const int n = a.dim();
  if (n == 1) return true;
  std::vector<std::vector<char>> arc(n, std::vector<char>(n, 0));
  for (const auto& [head, tail] : support_arcs(a)) {
    for (int j : tail) arc[head][j] = 1;
  }
  auto reaches_all = [&](bool reverse) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w) {
        const bool edge = reverse ? arc[w][v] : arc[v][w];
        if (edge && !seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == n;
  };
  return reaches_all(false) && reaches_all(true);
}

namespace {

struct Launch {
  int homotopy;
  int from_pair;  // -1 for forward tracks
};

struct Outcome {
  std::optional<TrackResult> track;
  std::string failure;
};

// Forward endpoints carry (-1)^{n-1}; the two t = 1 ends of one curve carry
// opposite signs.
int expected_sign(int n, int launched_sign) {
  if (launched_sign != 0) return -launched_sign;
  return (n - 1) % 2 == 0 ? 1 : -1;
}

// A wrong endpoint sign means the corrector hopped onto another branch;
// retrack with shorter steps before accepting it.
TrackResult track_guarded(const HomotopyProblem& p, const CurvePoint& start,
                          Direction dir, const OddZConfig& cfg, int expected) {
  TrackerConfig tc = cfg.tracker;
  TrackResult r = track_z(p, start, dir, tc);
  for (int retry = 0; retry < cfg.sign_retries; ++retry) {
    if (r.pair.det_sign == 0 || r.pair.det_sign == expected) break;
    tc.max_step *= 0.25;
    tc.initial_step = std::min(tc.initial_step, tc.max_step);
    tc.max_correction_ratio *= 0.5;
    tc.max_steps *= 4;
    TrackResult again = track_z(p, start, dir, tc);
    again.trace.evaluations += r.trace.evaluations;
    r = std::move(again);
  }
  return r;
}

}  // namespace

OddZResult find_odd_z(const DenseTensor& a, int k, std::uint64_t seed,
                      const OddZConfig& cfg) {
  if (k < 1) throw Error(ErrorKind::input, "find_odd_z: k must be >= 1");
  if (!a.is_nonnegative()) {
    throw Error(ErrorKind::input, "find_odd_z: tensor must be nonnegative");
  }
  if (!is_irreducible(a)) {
    throw Error(ErrorKind::precondition,
                "find_odd_z: tensor is reducible; the odd-count guarantee "
                "needs an irreducible tensor");
  }
  cfg.tracker.validate();
  const int n = a.dim();
  auto target = std::make_shared<const DenseTensor>(
      a.symmetry() == Symmetry::general ? semi_symmetrize(a) : a);

  OddZResult result{EigenSet(cfg.dedupe_tol), {}, 0, 0, 0, false, {}};
  EigenSet& set = result.set;

  // Phase 1: forward tracks, each homotopy with its own seeded stream so
  // that resampling stays deterministic under any thread count.
  std::vector<std::optional<HomotopyProblem>> problems(k);
  std::vector<Outcome> forward(k);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < k; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    for (int attempt = 0; attempt <= cfg.resample_attempts; ++attempt) {
      try {
        HomotopyProblem p(target, random_generator(n, rng, cfg.norm_low,
                                                   cfg.norm_high),
                          EigenKind::Z);
        forward[i].track =
            track_guarded(p, p.start_eigenpair(), Direction::forward, cfg,
                          expected_sign(n, 0));
        problems[i].emplace(std::move(p));
        forward[i].failure.clear();
        break;
      } catch (const Error& e) {
        forward[i].failure = e.what();
        if (e.kind() != ErrorKind::singular_curve) break;
      }
    }
  }

  std::vector<int> endpoint(k, -1);
  std::vector<std::set<int>> visited(k);
  std::vector<int> frontier;
  auto absorb = [&](const Launch& l, Outcome& o, int phase) -> void {
    const Direction dir =
        l.from_pair < 0 ? Direction::forward : Direction::backward;
    if (!o.track) {
      result.skipped.push_back({l.homotopy, l.from_pair, o.failure});
      return;
    }
    result.evaluations += o.track->trace.evaluations;
    const EigenPair& pair = o.track->pair;
    const int expected = expected_sign(
        n, l.from_pair < 0 ? 0 : set.pairs()[l.from_pair].det_sign);
    if (pair.det_sign != 0 && pair.det_sign != expected) {
      std::ostringstream msg;
      msg << "det sign " << pair.det_sign << " at lambda = " << pair.lambda
          << " contradicts the expected " << expected
          << " for a " << (l.from_pair < 0 ? "forward" : "backward")
          << " track of homotopy " << l.homotopy;
      result.warnings.push_back(msg.str());
    }
    if (!(pair.x.array() > 0.0).all()) {
      result.warnings.push_back("endpoint with a nonpositive component");
    }
    int index = set.find(pair);
    if (index < 0) {
      set.insert(pair, Provenance{l.homotopy, dir, l.from_pair, phase});
      index = static_cast<int>(set.size()) - 1;
      frontier.push_back(index);
    }
    if (l.from_pair < 0) {
      endpoint[l.homotopy] = index;
    } else {
      visited[l.homotopy].insert(l.from_pair);
    }
    visited[l.homotopy].insert(index);
  };

  for (int i = 0; i < k; ++i) {
    ++result.forward_tracks;
    absorb({i, -1}, forward[i], 1);
  }

  const std::size_t budget =
      static_cast<std::size_t>(k) * static_cast<std::size_t>(k - 1);
  for (int phase = 2; phase <= 1 + cfg.backward_phases; ++phase) {
    std::vector<Launch> launches;
    for (int i = 0; i < k; ++i) {
      if (endpoint[i] < 0) continue;
      for (int p : frontier) {
        if (!visited[i].contains(p)) launches.push_back({i, p});
      }
    }
    if (launches.empty()) break;
    if (launches.size() > budget) {
      result.warnings.push_back("backward launch budget hit in phase " +
                                std::to_string(phase));
      launches.resize(budget);
    }
    frontier.clear();
    std::vector<Outcome> outcomes(launches.size());
    const std::vector<EigenPair> snapshot = set.pairs();
#pragma omp parallel for schedule(dynamic)
    for (std::size_t l = 0; l < launches.size(); ++l) {
      const EigenPair& from = snapshot[launches[l].from_pair];
      const HomotopyProblem& p = *problems[launches[l].homotopy];
      try {
        outcomes[l].track =
            track_guarded(p, CurvePoint{from.x, from.lambda, 1.0, from.residual},
                          Direction::backward, cfg, expected_sign(n, from.det_sign));
      } catch (const Error& e) {
        outcomes[l].failure = e.what();
      }
    }
    for (std::size_t l = 0; l < launches.size(); ++l) {
      ++result.backward_tracks;
      absorb(launches[l], outcomes[l], phase);
    }
  }

  result.complete =
      result.skipped.empty() &&
      std::all_of(set.pairs().begin(), set.pairs().end(),
                  [](const EigenPair& p) { return p.det_sign != 0; });
  if (!result.skipped.empty()) {
    result.warnings.push_back(
        std::to_string(result.skipped.size()) +
        " branch(es) skipped; the result is the found set, not a certified "
        "odd count");
  }
  return result;
}

}  // namespace teneig
