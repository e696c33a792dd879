#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"
#include "teneig/baselines.hpp"
#include "teneig/multi_eigen.hpp"

namespace teneig {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

/// Reads the text tensor format: a line `m n`, then `i1 ... im value` lines
/// with 1-based indices. Lines starting with '#' are comments, except
/// `# symmetry: symmetric|semisymmetric` which sets the symmetry flag. The
/// flag is checked on 100 sampled permutations.
DenseTensor read_tensor(std::istream& in);
DenseTensor read_tensor_file(const std::filesystem::path& path);

/// Canonical form: header, symmetry comment when not general, nonzeros in
/// index order.
void write_tensor(std::ostream& out, const DenseTensor& a);
void write_tensor_file(const std::filesystem::path& path, const DenseTensor& a);

nlohmann::json pair_json(const EigenPair& pair, const nlohmann::json& provenance);
nlohmann::json provenance_json(const Provenance& p);
nlohmann::json track_json(const std::string& command, const TrackResult& r);
nlohmann::json odd_z_json(const OddZResult& r, int k, std::uint64_t seed);
nlohmann::json baseline_json(const std::string& method,
                             const IterationReport& r);

/// Columns step, t, lambda, x_1..x_n, tangent_t, residual, turning_point.
void write_trace_csv(std::ostream& out, const CurveTrace& trace);

}  // namespace teneig
