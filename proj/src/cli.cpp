#include "teneig/cli.hpp"

#include <omp.h>

#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "teneig/baselines.hpp"
#include "teneig/generators.hpp"
#include "teneig/io.hpp"
#include "teneig/multi_eigen.hpp"

namespace teneig {

void RunConfig::validate() const {
  if (!(tol > 0.0)) throw Error(ErrorKind::input, "--tol must be > 0");
  if (k < 1) throw Error(ErrorKind::input, "--k must be >= 1");
  if (threads < 1) throw Error(ErrorKind::input, "--threads must be >= 1");
  if (command != Command::gen && input.empty()) {
    throw Error(ErrorKind::input, "--input is required");
  }
  tracker.validate();
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::input: return 2;
    case ErrorKind::domain: return 3;
    case ErrorKind::precondition: return 4;
    case ErrorKind::singular_curve: return 5;
    case ErrorKind::stalled: return 6;
    case ErrorKind::divergence: return 7;
    case ErrorKind::budget: return 8;
    case ErrorKind::refinement_failed: return 9;
    case ErrorKind::anomaly: return 10;
  }
  return 1;
}

namespace {

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(cfg.output);
  if (!file) throw Error(ErrorKind::input, "cannot write " + cfg.output);
  file << text;
}

void emit_json(const RunConfig& cfg, std::ostream& out,
               const nlohmann::json& j) {
  emit(cfg, out, j.dump(2) + "\n");
}

void emit_trace(const RunConfig& cfg, const CurveTrace& trace) {
  if (!cfg.trace) return;
  std::ofstream file(*cfg.trace);
  if (!file) throw Error(ErrorKind::input, "cannot write " + *cfg.trace);
  write_trace_csv(file, trace);
}

Vector positive_start(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = unit(rng);
  return v.normalized();
}

DenseTensor generate(const RunConfig& cfg) {
  if (cfg.generator == "laplacian") return gen_signless_laplacian(cfg.m, cfg.n);
  if (cfg.generator == "scaled-laplacian") {
    return gen_scaled_laplacian(cfg.w, cfg.m, cfg.n);
  }
  if (cfg.generator == "pagerank") return gen_pagerank(cfg.alpha.value_or(0.99));
  if (cfg.generator == "three-eig") return gen_example_3eig();
  throw Error(ErrorKind::input, "unknown generator '" + cfg.generator + "'");
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command == Command::gen) {
    std::ostringstream text;
    write_tensor(text, generate(cfg));
    emit(cfg, out, text.str());
    return 0;
  }
  auto a = std::make_shared<const DenseTensor>(read_tensor_file(cfg.input));
  std::mt19937_64 rng(cfg.seed);
  switch (cfg.command) {
    case Command::z: {
      HomotopyProblem p(a, random_generator(a->dim(), rng), EigenKind::Z);
      const TrackResult r =
          track_z(p, p.start_eigenpair(), Direction::forward, cfg.tracker);
      emit_trace(cfg, r.trace);
      emit_json(cfg, out, track_json("z", r));
      return 0;
    }
    case Command::h: {
      Vector g = cfg.random_start ? random_generator(a->dim(), rng)
                                  : uniform_h_generator(a->dim(), a->order());
      HomotopyProblem p(a, std::move(g), EigenKind::H);
      const TrackResult r = track_h(p, cfg.tracker);
      emit_trace(cfg, r.trace);
      emit_json(cfg, out, track_json("h", r));
      return 0;
    }
    case Command::zodd: {
      OddZConfig oc;
      oc.tracker = cfg.tracker;
      const OddZResult r = find_odd_z(*a, cfg.k, cfg.seed, oc);
      emit_json(cfg, out, odd_z_json(r, cfg.k, cfg.seed));
      return 0;
    }
    case Command::baseline: {
      const Vector x0 = positive_start(a->dim(), rng);
      IterationReport r;
      if (cfg.method == "nqz") {
        r = nqz(*a, x0, cfg.tol, cfg.max_eval);
      } else if (cfg.method == "sshopm") {
        r = sshopm(*a, cfg.alpha.value_or(1.0), x0, cfg.tol, cfg.max_eval);
      } else {
        throw Error(ErrorKind::input, "unknown baseline '" + cfg.method + "'");
      }
      emit_json(cfg, out, baseline_json(cfg.method, r));
      return r.converged ? 0 : exit_code(ErrorKind::budget);
    }
    case Command::gen:
      break;
  }
  return 0;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    omp_set_num_threads(cfg.threads);
    return dispatch(cfg, out);
  } catch (const Error& e) {
    err << "teneig: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "teneig: internal error: " << e.what() << '\n';
    return 1;
  }
}

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Nonnegative tensor eigenpairs by homotopy continuation",
               "teneig"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input,-i", cfg.input, "tensor file");
    if (needs_input) in->required();
    sub->add_option("--output,-o", cfg.output, "output path (default stdout)");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--threads", cfg.threads, "OpenMP threads")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tol", cfg.tol, "convergence tolerance");
  };
  auto tracking = [&](CLI::App* sub) {
    sub->add_option("--trace", cfg.trace, "curve trace CSV path");
    sub->add_option("--initial-step", cfg.tracker.initial_step);
    sub->add_option("--max-step", cfg.tracker.max_step);
    sub->add_option("--min-step", cfg.tracker.min_step);
    sub->add_option("--max-steps", cfg.tracker.max_steps);
    sub->add_option("--newton-tol", cfg.tracker.newton_tol);
  };

  auto* z = app.add_subcommand("z", "one positive Z-eigenpair");
  common(z, true);
  tracking(z);
  auto* h = app.add_subcommand("h", "the positive H-eigenpair");
  common(h, true);
  tracking(h);
  h->add_flag("--random-start", cfg.random_start,
              "random generator instead of the uniform start");
  auto* zodd = app.add_subcommand("zodd", "an odd number of Z-eigenpairs");
  common(zodd, true);
  tracking(zodd);
  zodd->add_option("--k", cfg.k, "number of homotopies");
  auto* gen = app.add_subcommand("gen", "write a test tensor");
  common(gen, false);
  gen->add_option("kind", cfg.generator,
                  "laplacian | scaled-laplacian | pagerank | three-eig")
      ->required()
      ->check(CLI::IsMember({"laplacian", "scaled-laplacian", "pagerank",
                             "three-eig"}));
  gen->add_option("--m", cfg.m, "tensor order");
  gen->add_option("--n", cfg.n, "dimension");
  gen->add_option("--w", cfg.w, "adjacency weight");
  gen->add_option("--alpha", cfg.alpha, "damping factor");
  auto* base = app.add_subcommand("baseline", "NQZ or SS-HOPM iteration");
  common(base, true);
  base->add_option("method", cfg.method, "nqz | sshopm")
      ->required()
      ->check(CLI::IsMember({"nqz", "sshopm"}));
  base->add_option("--alpha", cfg.alpha, "SS-HOPM shift");
  base->add_option("--max-eval", cfg.max_eval, "evaluation cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : exit_code(ErrorKind::input);
  }
  if (z->parsed()) cfg.command = Command::z;
  if (h->parsed()) cfg.command = Command::h;
  if (zodd->parsed()) cfg.command = Command::zodd;
  if (gen->parsed()) cfg.command = Command::gen;
  if (base->parsed()) cfg.command = Command::baseline;
  return run(cfg, out, err);
}

}  // namespace teneig
