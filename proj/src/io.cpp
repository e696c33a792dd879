#include "teneig/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "teneig/error.hpp"

namespace teneig {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

namespace {

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw Error(ErrorKind::input,
              "tensor file line " + std::to_string(line) + ": " + what);
}

template <class T>
bool parse_token(const std::string& tok, T& out) {
  const char* end = tok.data() + tok.size();
  const auto r = std::from_chars(tok.data(), end, out);
  return r.ec == std::errc() && r.ptr == end;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

DenseTensor read_tensor(std::istream& in) {
  std::string line;
  int lineno = 0;
  int m = 0;
  int n = 0;
  bool have_header = false;
  Symmetry symmetry = Symmetry::general;
  std::vector<double> entries;
  std::unordered_set<std::size_t> seen;
  std::vector<int> index;

  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = trim(line.substr(1));
      const std::string key = "symmetry:";
      if (body.rfind(key, 0) == 0) {
        const std::string value = trim(body.substr(key.size()));
        if (value == "symmetric") {
          symmetry = Symmetry::symmetric;
        } else if (value == "semisymmetric") {
          symmetry = Symmetry::semi_symmetric;
        } else if (value == "general") {
          symmetry = Symmetry::general;
        } else {
          parse_error(lineno, "unknown symmetry '" + value + "'");
        }
      }
      continue;
    }
    std::istringstream tokens(line);
    std::vector<std::string> fields;
    for (std::string tok; tokens >> tok;) fields.push_back(tok);
    if (!have_header) {
      if (fields.size() != 2 || !parse_token(fields[0], m) ||
          !parse_token(fields[1], n)) {
        parse_error(lineno, "expected header 'm n'");
      }
      entries.assign(checked_entry_count(m, n), 0.0);
      index.resize(static_cast<std::size_t>(m));
      have_header = true;
      continue;
    }
    if (fields.size() != static_cast<std::size_t>(m) + 1) {
      parse_error(lineno, "expected " + std::to_string(m) +
                              " indices and a value");
    }
    for (int q = 0; q < m; ++q) {
      int i = 0;
      if (!parse_token(fields[q], i) || i < 1 || i > n) {
        parse_error(lineno, "index '" + fields[q] + "' outside 1.." +
                                std::to_string(n));
      }
      index[q] = i - 1;
    }
    double value = 0.0;
    if (!parse_token(fields[m], value) || !std::isfinite(value)) {
      parse_error(lineno, "bad value '" + fields[m] + "'");
    }
    std::size_t off = 0;
    for (int i : index) off = off * static_cast<std::size_t>(n) + i;
    if (!seen.insert(off).second) parse_error(lineno, "duplicate index tuple");
    entries[off] = value;
  }
  if (!have_header) throw Error(ErrorKind::input, "tensor file has no header");
  DenseTensor a(m, n, std::move(entries), symmetry);
  if (!check_symmetry(a, 100, 0)) {
    throw Error(ErrorKind::input, std::string("tensor is not ") +
                                      to_string(symmetry) +
                                      " as its header claims");
  }
  return a;
}

DenseTensor read_tensor_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::input, "cannot open " + path.string());
  return read_tensor(in);
}

void write_tensor(std::ostream& out, const DenseTensor& a) {
  out << a.order() << ' ' << a.dim() << '\n';
  if (a.symmetry() != Symmetry::general) {
    out << "# symmetry: " << to_string(a.symmetry()) << '\n';
  }
  std::vector<int> index(static_cast<std::size_t>(a.order()), 0);
  for (double v : a.entries()) {
    if (v != 0.0) {
      for (int i : index) out << i + 1 << ' ';
      out << format_double(v) << '\n';
    }
    next_index(index, a.dim());
  }
}

void write_tensor_file(const std::filesystem::path& path, const DenseTensor& a) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::input, "cannot write " + path.string());
  write_tensor(out, a);
  if (!out) throw Error(ErrorKind::input, "write failed: " + path.string());
}

json pair_json(const EigenPair& pair, const json& provenance) {
  return json{{"lambda", pair.lambda},
              {"x", std::vector<double>(pair.x.begin(), pair.x.end())},
              {"residual", pair.residual},
              {"detSign", pair.det_sign},
              {"kind", to_string(pair.kind)},
              {"provenance", provenance}};
}

json provenance_json(const Provenance& p) {
  json j{{"homotopy", p.start_index},
         {"direction",
          p.direction == Direction::forward ? "forward" : "backward"},
         {"phase", p.phase}};
  if (p.launched_from >= 0) j["launchedFrom"] = p.launched_from;
  return j;
}

namespace {

json summary(std::size_t count, std::size_t skipped) {
  return json{{"count", count},
              {"odd", count % 2 == 1},
              {"skippedBranches", skipped}};
}

}  // namespace

json track_json(const std::string& command, const TrackResult& r) {
  json tps = json::array();
  for (const auto& tp : r.trace.turning_points) tps.push_back(tp.t);
  return json{
      {"command", command},
      {"pairs", json::array({pair_json(r.pair, json{{"homotopy", 0},
                                                      {"direction", "forward"},
                                                      {"phase", 1}})})},
      {"summary", summary(1, 0)},
      {"evaluations", r.trace.evaluations},
      {"steps", r.trace.steps},
      {"turningPoints", tps}};
}

json odd_z_json(const OddZResult& r, int k, std::uint64_t seed) {
  json pairs = json::array();
  for (std::size_t i = 0; i < r.set.size(); ++i) {
    pairs.push_back(
        pair_json(r.set.pairs()[i], provenance_json(r.set.provenance()[i])));
  }
  json skipped = json::array();
  for (const auto& s : r.skipped) {
    json e{{"homotopy", s.start_index}, {"reason", s.reason}};
    if (s.launched_from >= 0) e["launchedFrom"] = s.launched_from;
    skipped.push_back(e);
  }
  int sign_sum = 0;
  for (const auto& p : r.set.pairs()) sign_sum += p.det_sign;
  json s = summary(r.set.size(), r.skipped.size());
  s["detSignSum"] = sign_sum;
  s["complete"] = r.complete;
  return json{{"command", "zodd"},
              {"k", k},
              {"seed", seed},
              {"pairs", pairs},
              {"summary", s},
              {"skipped", skipped},
              {"evaluations", r.evaluations},
              {"forwardTracks", r.forward_tracks},
              {"backwardTracks", r.backward_tracks},
              {"warnings", r.warnings}};
}

json baseline_json(const std::string& method, const IterationReport& r) {
  return json{{"command", "baseline"},
              {"method", method},
              {"pairs", json::array({pair_json(r.pair, json{{"method", method}})})},
              {"summary", summary(1, 0)},
              {"converged", r.converged},
              {"iterations", r.iterations},
              {"evaluations", r.evaluations}};
}

void write_trace_csv(std::ostream& out, const CurveTrace& trace) {
  const std::size_t n =
      trace.points.empty() ? 0 : static_cast<std::size_t>(trace.points[0].x.size());
  out << "step,t,lambda";
  for (std::size_t i = 1; i <= n; ++i) out << ",x_" << i;
  out << ",tangent_t,residual,turning_point\n";
  std::unordered_set<std::size_t> turning;
  for (const auto& tp : trace.turning_points) turning.insert(tp.index);
  for (std::size_t s = 0; s < trace.points.size(); ++s) {
    const CurvePoint& p = trace.points[s];
    out << s << ',' << format_double(p.t) << ',' << format_double(p.lambda);
    for (Eigen::Index i = 0; i < p.x.size(); ++i) {
      out << ',' << format_double(p.x[i]);
    }
    const double tt = s < trace.tangent_t.size() ? trace.tangent_t[s] : 0.0;
    out << ',' << format_double(tt) << ',' << format_double(p.residual_norm)
        << ',' << (turning.contains(s) ? 1 : 0) << '\n';
  }
}

}  // namespace teneig
