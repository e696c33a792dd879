#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "teneig/tracker.hpp"

namespace teneig {

/// Where a pair in an EigenSet came from.
struct Provenance {
  int start_index = 0;  ///< homotopy (start generator) that produced it
  Direction direction = Direction::forward;
  int launched_from = -1;  ///< pair index a backward track started at
  int phase = 1;
};

/// Distinct Z-eigenpairs, deduplicated by ||x - x'|| + |lambda - lambda'|.
class EigenSet {
 public:
  explicit EigenSet(double dedupe_tol = 1e-8) : dedupe_tol_(dedupe_tol) {}

  /// Index of a stored pair within dedupe_tol of `pair`, or -1.
  int find(const EigenPair& pair) const;

  /// Inserts unless a stored pair lies within dedupe_tol; returns whether
  /// it was inserted. Eigenvectors are sign-canonicalized first (positive
  /// first nonzero component).
  bool insert(EigenPair pair, Provenance provenance = {});

  const std::vector<EigenPair>& pairs() const noexcept { return pairs_; }
  const std::vector<Provenance>& provenance() const noexcept {
    return provenance_;
  }
  std::size_t size() const noexcept { return pairs_.size(); }
  double dedupe_tol() const noexcept { return dedupe_tol_; }

 private:
  double dedupe_tol_;
  std::vector<EigenPair> pairs_;
  std::vector<Provenance> provenance_;
};

/// Free-function form of EigenSet::insert.
bool dedupe_insert(EigenSet& set, const EigenPair& pair,
                   Provenance provenance = {});

struct OddZConfig {
  TrackerConfig tracker;
  double dedupe_tol = 1e-8;
  /// Backward-launch rounds after the forward phase.
  int backward_phases = 3;
  /// Fresh generators tried when a forward track hits a singular curve.
  int resample_attempts = 3;
  /// Retracks with shorter steps when an endpoint has the wrong det sign.
  int sign_retries = 2;
  double norm_low = 0.9;
  double norm_high = 1.1;
};

struct SkippedBranch {
  int start_index;
  int launched_from;  ///< -1 for forward tracks
  std::string reason;
};

struct OddZResult {
  EigenSet set;
  std::vector<SkippedBranch> skipped;
  long evaluations = 0;
  int forward_tracks = 0;
  int backward_tracks = 0;
  /// True when nothing was skipped and every det sign is nonzero, i.e.
  /// the odd-count guarantee applies to this run.
  bool complete = false;
  std::vector<std::string> warnings;
};

/// Accumulates an odd number of distinct positive Z-eigenpairs of an
/// irreducible nonnegative tensor.
///
/// Phase 1 forward-tracks k homotopies from random rank-1 starts; all their
/// endpoints have det sign (-1)^{n-1}. Each following phase launches
/// homotopy i backward from every pair found in the previous phase that is
/// not already on a traced curve of homotopy i. A backward track ends on a
/// pair of opposite det sign, so the signs found pair up around the odd
/// total. Tracks within a phase run in parallel; insertion happens in
/// launch order, so results do not depend on the thread count.
OddZResult find_odd_z(const DenseTensor& a, int k, std::uint64_t seed,
                      const OddZConfig& cfg = {});

/// Sign of det D_{x,lambda} F_Z at a Z-eigenpair of `a`; 0 when singular.
int det_sign(const DenseTensor& a, const EigenPair& pair);

/// Exact test of the reducibility definition: A is reducible iff some
/// nonempty proper S has A_{i,i2..im} = 0 whenever i is in S and all of
/// i2..im lie outside S.
bool is_irreducible(const DenseTensor& a);

/// Strong connectivity of the representation digraph with an arc i -> j
/// whenever some nonzero A_{i,i2..im} has j among i2..im.
bool is_weakly_irreducible(const DenseTensor& a);

}  // namespace teneig
