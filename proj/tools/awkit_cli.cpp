#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "awkit/awkit.hpp"

namespace {

using nlohmann::json;

struct Options {
  std::uint64_t seed = 0;
  awkit::Tolerances tols;
  std::size_t rows = 1;
  std::size_t cols = 1;
  std::size_t n = 0;
  std::size_t k = 0;
  std::string field;
  std::string format;
  std::string input;
  std::string output;
  std::string values;
  std::size_t steps = 0;
  bool steps_given = false;
  bool want_gram = false;
  int order = 1;
  std::size_t trials = 1000;
  std::size_t bins = 20;
  std::size_t workers = 1;
  std::size_t dim_min = 3;
  std::size_t dim_max = 8;
  double tol = 1e-9;
  int exit_code = 0;
};

double env_double(const char* name, double fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const double parsed = std::strtod(v, &end);
  if (end == v || *end != '\0' || parsed <= 0.0)
    throw awkit::DomainError(std::string(name) + " must be a positive number");
  return parsed;
}

std::uint64_t env_seed(std::uint64_t fallback) {
  const char* v = std::getenv("AWK_SEED");
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(v, &end, 10);
  if (end == v || *end != '\0')
    throw awkit::DomainError("AWK_SEED must be an unsigned integer");
  return parsed;
}

awkit::Field parse_field(const std::string& s) {
  if (s == "real") return awkit::Field::Real;
  if (s == "complex") return awkit::Field::Complex;
  throw awkit::DomainError("field must be real or complex");
}

std::optional<awkit::FileFormat> parse_format(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "json") return awkit::FileFormat::Json;
  if (s == "csv") return awkit::FileFormat::Csv;
  throw awkit::DomainError("format must be json or csv");
}

/// Calls fn with the scalar type matching the field tag.
template <typename Fn>
auto dispatch(awkit::Field f, Fn&& fn) {
  if (f == awkit::Field::Complex) return fn.template operator()<awkit::cplx>();
  return fn.template operator()<double>();
}

void emit(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  awkit::detail::write_file(path, j.dump(2) + "\n");
}

json log_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

template <awkit::ScalarType T>
awkit::HermMatrix<T> as_herm(const awkit::Matrix<T>& m) {
  return awkit::HermMatrix<T>::from_full(m);
}

template <awkit::ScalarType T>
awkit::Matrix<T> typed_matrix(const awkit::MatrixFile& f) {
  if constexpr (awkit::is_complex_v<T>)
    return f.as_complex();
  else
    return f.as_real();
}

void cmd_sample(Options& o) {
  const awkit::Field field = parse_field(o.field.empty() ? "complex" : o.field);
  const awkit::EnsembleSpec spec{o.rows, o.cols, field, o.seed};
  const auto fmt = parse_format(o.format);
  dispatch(field, [&]<typename T>() {
    const auto a = awkit::sample_gaussian<T>(spec);
    const awkit::Matrix<T> out = o.want_gram ? awkit::gram(a).matrix() : a;
    if (o.output.empty())
      std::cout << awkit::to_json(out).dump(2) << "\n";
    else
      awkit::save_matrix(o.output, out, fmt);
  });
}

void cmd_gram(Options& o) {
  const auto file = awkit::load_matrix(o.input, parse_format(o.format));
  dispatch(file.field, [&]<typename T>() {
    const auto g = awkit::gram(typed_matrix<T>(file)).matrix();
    if (o.output.empty())
      std::cout << awkit::to_json(g).dump(2) << "\n";
    else
      awkit::save_matrix(o.output, g);
  });
}

void cmd_reduce(Options& o) {
  const auto file = awkit::load_matrix(o.input, parse_format(o.format));
  dispatch(file.field, [&]<typename T>() {
    const auto omega = as_herm(typed_matrix<T>(file));
    const std::size_t steps = o.steps_given ? o.steps : omega.dim();
    const auto trace = awkit::reduce_trace(omega, steps, o.tols);
    json rep;
    rep["initial_dim"] = omega.dim();
    rep["steps_run"] = trace.pivots.size();
    rep["pivots"] = trace.pivots;
    rep["terminated_at"] =
        trace.terminated_at ? json(*trace.terminated_at) : json(nullptr);
    rep["final"] = awkit::to_json(trace.steps.back().matrix());
    emit(rep, o.output);
  });
}

void cmd_detect_rank(Options& o) {
  const auto file = awkit::load_matrix(o.input, parse_format(o.format));
  dispatch(file.field, [&]<typename T>() {
    const auto omega = as_herm(typed_matrix<T>(file));
    const auto rank = awkit::detect_rank(omega, o.tols);
    json rep;
    rep["detected_n"] = rank.detected_n;
    rep["vanishing_norm"] = rank.vanishing_norm;
    rep["pivot_history"] = rank.pivot_history;
    emit(rep, o.output);
  });
}

void cmd_reconstruct(Options& o) {
  const auto file = awkit::load_matrix(o.input, parse_format(o.format));
  const std::size_t in_rows = file.rows();
  const std::size_t in_cols = file.cols();
  if (o.k != 0 && o.k != in_cols)
    throw awkit::DomainError("--k does not match the input column count");
  std::size_t n = o.n != 0 ? o.n : in_rows;
  if (o.n == 0 && in_rows >= in_cols && in_rows == in_cols)
    throw awkit::DomainError("--n is required for a square input");
  if (n > in_rows)
    throw awkit::DomainError("--n exceeds the rows present in the input");
  if (n < in_rows && in_rows != in_cols)
    throw awkit::DomainError("--n may slice rows only from a full square matrix");
  dispatch(file.field, [&]<typename T>() {
    auto full = typed_matrix<T>(file);
    awkit::Matrix<T> rows(n, in_cols);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < in_cols; ++j) rows(i, j) = full(i, j);
    const awkit::PartialWishart<T> partial(std::move(rows));
    const auto result = awkit::reconstruct(partial, o.tols);
    const auto audit = awkit::consistency_check(result.omega, n, o.tols);
    json summary;
    summary["n"] = n;
    summary["k"] = in_cols;
    summary["residual_max"] = audit.max_abs;
    summary["constraint_count"] = audit.constraint_count;
    summary["condition_estimate"] = result.condition_estimate;
    summary["ill_conditioned"] = result.ill_conditioned;
    if (o.output.empty()) {
      std::cout << awkit::to_json(result.omega.matrix()).dump(2) << "\n";
      std::cerr << summary.dump(2) << "\n";
    } else {
      awkit::save_matrix(o.output, result.omega.matrix(), parse_format(o.format));
      std::cout << summary.dump(2) << "\n";
    }
  });
}

void cmd_check(Options& o) {
  const auto file = awkit::load_matrix(o.input, parse_format(o.format));
  dispatch(file.field, [&]<typename T>() {
    const auto omega = as_herm(typed_matrix<T>(file));
    const auto rep = awkit::consistency_check(omega, o.n, o.tols);
    const bool pass =
        rep.max_abs <= o.tols.constraint * awkit::scale_of(omega);
    json out;
    out["n"] = o.n;
    out["k"] = omega.dim();
    out["max_abs"] = rep.max_abs;
    out["constraint_count"] = rep.constraint_count;
    out["residuals"] = awkit::to_json(rep.residuals);
    out["pass"] = pass;
    emit(out, o.output);
    if (!pass) o.exit_code = 1;
  });
}

void cmd_density(Options& o) {
  const auto file = awkit::load_matrix(o.input, parse_format(o.format));
  const awkit::Field field =
      o.field.empty() ? file.field : parse_field(o.field);
  dispatch(field, [&]<typename T>() {
    const auto omega = as_herm(typed_matrix<T>(file));
    const auto d = awkit::log_density_elements(omega, o.n, o.tols);
    json rep;
    rep["log_value"] = log_or_null(d.log_value);
    rep["support_ok"] = d.support_ok;
    rep["residual_max"] = d.residual_max ? json(*d.residual_max) : json(nullptr);
    emit(rep, o.output);
  });
}

void cmd_eigdensity(Options& o) {
  awkit::EigenSample s;
  s.n = o.n;
  s.k = o.k;
  s.beta = awkit::beta_of(parse_field(o.field.empty() ? "complex" : o.field));
  std::istringstream in(o.values);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    try {
      s.values.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw awkit::DomainError("unparsable eigenvalue: " + cell);
    }
  }
  const double lv = awkit::log_density_eigen(s);
  json rep;
  rep["log_value"] = log_or_null(lv);
  rep["count"] = s.values.size();
  emit(rep, o.output);
}

void cmd_verify_moments(Options& o) {
  const awkit::Field field = parse_field(o.field.empty() ? "complex" : o.field);
  const awkit::EnsembleSpec spec{o.rows, o.cols, field, o.seed};
  const auto rep = dispatch(field, [&]<typename T>() {
    return awkit::moment_test<T>(spec, o.order, o.trials, o.workers);
  });
  json out;
  out["moment_order"] = rep.moment_order;
  out["empirical"] = rep.empirical;
  out["analytic"] = rep.analytic;
  out["mc_stderr"] = rep.mc_stderr;
  out["trials"] = rep.trials;
  out["pass"] = rep.pass;
  emit(out, o.output);
  if (!rep.pass) o.exit_code = 1;
}

void cmd_verify_spectra(Options& o) {
  const awkit::Field field = parse_field(o.field.empty() ? "complex" : o.field);
  const awkit::EnsembleSpec spec{o.rows, o.cols, field, o.seed};
  std::size_t failures = 0;
  dispatch(field, [&]<typename T>() {
    for (std::size_t t = 0; t < o.trials; ++t) {
      const auto a = awkit::sample_gaussian<T>(spec, t);
      if (!awkit::spectral_coincidence(a, o.tol)) ++failures;
    }
  });
  json out;
  out["trials"] = o.trials;
  out["failures"] = failures;
  out["pass"] = failures == 0;
  emit(out, o.output);
  if (failures != 0) o.exit_code = 1;
}

void cmd_verify_identity(Options& o) {
  const awkit::Field field = parse_field(o.field.empty() ? "complex" : o.field);
  const auto rep = dispatch(field, [&]<typename T>() {
    return awkit::identity_fuzz<T>(o.trials, {o.dim_min, o.dim_max}, o.seed);
  });
  json out;
  out["trials"] = rep.trials;
  out["max_rel_residual"] = rep.max_rel_residual;
  out["pass"] = rep.pass;
  emit(out, o.output);
  if (!rep.pass) o.exit_code = 1;
}

void cmd_verify_histogram(Options& o) {
  const awkit::Field field = parse_field(o.field.empty() ? "complex" : o.field);
  const awkit::EnsembleSpec spec{o.rows, o.cols, field, o.seed};
  const auto h = dispatch(field, [&]<typename T>() {
    return awkit::eigen_histogram<T>(spec, o.trials, o.bins, o.tols);
  });
  json out;
  out["bin_edges"] = h.bin_edges;
  out["counts"] = h.counts;
  out["total"] = h.total;
  out["zero_modes"] = h.zero_modes;
  emit(out, o.output);
}

void add_tol_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--tol-pivot", o.tols.pivot, "Relative pivot tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-vanish", o.tols.vanish, "Relative vanish tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-constraint", o.tols.constraint,
                  "Relative constraint tolerance")
      ->check(CLI::PositiveNumber);
}

void add_io_flags(CLI::App* cmd, Options& o, bool need_input) {
  auto* in = cmd->add_option("-i,--input", o.input, "Input matrix file");
  if (need_input) in->required();
  cmd->add_option("-o,--output", o.output, "Output file (default: stdout)");
  cmd->add_option("--format", o.format, "File format")
      ->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Wishart and Anti-Wishart matrix toolkit"};
  app.require_subcommand(1);

  try {
    o.seed = env_seed(0);
    o.tols.pivot = env_double("AWK_TOL_PIVOT", o.tols.pivot);
    o.tols.vanish = env_double("AWK_TOL_VANISH", o.tols.vanish);
    o.tols.constraint = env_double("AWK_TOL_CONSTRAINT", o.tols.constraint);
  } catch (const awkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  auto* sample = app.add_subcommand("sample", "Draw a Gaussian matrix or its Gram matrix");
  sample->add_option("-r,--rows", o.rows, "Rows of A")->required()->check(CLI::PositiveNumber);
  sample->add_option("-c,--cols", o.cols, "Columns of A")->required()->check(CLI::PositiveNumber);
  sample->add_option("--field", o.field, "Scalar field")->check(CLI::IsMember({"real", "complex"}));
  sample->add_option("--seed", o.seed, "RNG seed");
  sample->add_flag("--gram", o.want_gram, "Emit the Gram matrix A†A instead of A");
  add_io_flags(sample, o, false);
  sample->callback([&] { cmd_sample(o); });

  auto* gramc = app.add_subcommand("gram", "Compute A†A of an input matrix");
  add_io_flags(gramc, o, true);
  gramc->callback([&] { cmd_gram(o); });

  auto* reduce = app.add_subcommand("reduce", "Run the elimination recursion");
  add_io_flags(reduce, o, true);
  add_tol_flags(reduce, o);
  reduce->add_option("--steps", o.steps, "Steps to run (default: matrix dimension)")
      ->each([&](const std::string&) { o.steps_given = true; });
  reduce->callback([&] { cmd_reduce(o); });

  auto* detect = app.add_subcommand("detect-rank", "Detect hidden rank by elimination");
  add_io_flags(detect, o, true);
  add_tol_flags(detect, o);
  detect->callback([&] { cmd_detect_rank(o); });

  auto* recon = app.add_subcommand("reconstruct",
                                   "Complete a matrix from its first n rows");
  add_io_flags(recon, o, true);
  add_tol_flags(recon, o);
  recon->add_option("--n", o.n, "Known row count");
  recon->add_option("--k", o.k, "Full dimension (must match input columns)");
  recon->callback([&] { cmd_reconstruct(o); });

  auto* check = app.add_subcommand("check", "Audit redundancy constraints");
  add_io_flags(check, o, true);
  add_tol_flags(check, o);
  check->add_option("--n", o.n, "Independent row count")->required();
  check->callback([&] { cmd_check(o); });

  auto* density = app.add_subcommand("density", "Entrywise log density of a matrix");
  add_io_flags(density, o, true);
  add_tol_flags(density, o);
  density->add_option("--n", o.n, "Row count of the underlying A")->required()
      ->check(CLI::PositiveNumber);
  density->add_option("--field", o.field, "Evaluate under this field")
      ->check(CLI::IsMember({"real", "complex"}));
  density->callback([&] { cmd_density(o); });

  auto* eigd = app.add_subcommand("eigdensity", "Joint log density of eigenvalues");
  eigd->add_option("--values", o.values, "Comma-separated eigenvalues")->required();
  eigd->add_option("--n", o.n, "Rows of A")->required()->check(CLI::PositiveNumber);
  eigd->add_option("--k", o.k, "Columns of A")->required()->check(CLI::PositiveNumber);
  eigd->add_option("--field", o.field, "Scalar field")
      ->check(CLI::IsMember({"real", "complex"}));
  eigd->add_option("-o,--output", o.output, "Output file (default: stdout)");
  eigd->callback([&] { cmd_eigdensity(o); });

  auto* verify = app.add_subcommand("verify", "Statistical and algebraic self-tests");
  verify->require_subcommand(1);

  auto* vmom = verify->add_subcommand("moments", "Trace-moment Monte Carlo test");
  vmom->add_option("-r,--rows", o.rows, "Rows of A")->required()->check(CLI::PositiveNumber);
  vmom->add_option("-c,--cols", o.cols, "Columns of A")->required()->check(CLI::PositiveNumber);
  vmom->add_option("--field", o.field, "Scalar field")->check(CLI::IsMember({"real", "complex"}));
  vmom->add_option("--order", o.order, "Moment order (1 or 2)")->check(CLI::Range(1, 2));
  vmom->add_option("--trials", o.trials, "Trial count")->check(CLI::PositiveNumber);
  vmom->add_option("--seed", o.seed, "RNG seed");
  vmom->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  vmom->add_option("-o,--output", o.output, "Output file (default: stdout)");
  vmom->callback([&] { cmd_verify_moments(o); });

  auto* vspec = verify->add_subcommand("spectra", "Nonzero-spectrum coincidence test");
  vspec->add_option("-r,--rows", o.rows, "Rows of A")->required()->check(CLI::PositiveNumber);
  vspec->add_option("-c,--cols", o.cols, "Columns of A")->required()->check(CLI::PositiveNumber);
  vspec->add_option("--field", o.field, "Scalar field")->check(CLI::IsMember({"real", "complex"}));
  vspec->add_option("--trials", o.trials, "Trial count")->check(CLI::PositiveNumber);
  vspec->add_option("--seed", o.seed, "RNG seed");
  vspec->add_option("--tol", o.tol, "Relative agreement tolerance")->check(CLI::PositiveNumber);
  vspec->add_option("--workers", o.workers, "Worker threads (accepted; run is serial)");
  vspec->add_option("-o,--output", o.output, "Output file (default: stdout)");
  vspec->callback([&] { cmd_verify_spectra(o); });

  auto* vid = verify->add_subcommand("identity", "Minor-identity fuzz test");
  vid->add_option("--trials", o.trials, "Trial count")->check(CLI::PositiveNumber);
  vid->add_option("--dim-min", o.dim_min, "Smallest matrix dimension");
  vid->add_option("--dim-max", o.dim_max, "Largest matrix dimension");
  vid->add_option("--field", o.field, "Scalar field")->check(CLI::IsMember({"real", "complex"}));
  vid->add_option("--seed", o.seed, "RNG seed");
  vid->add_option("--workers", o.workers, "Worker threads (accepted; run is serial)");
  vid->add_option("-o,--output", o.output, "Output file (default: stdout)");
  vid->callback([&] { cmd_verify_identity(o); });

  auto* vhist = verify->add_subcommand("histogram", "Pooled eigenvalue histogram");
  vhist->add_option("-r,--rows", o.rows, "Rows of A")->required()->check(CLI::PositiveNumber);
  vhist->add_option("-c,--cols", o.cols, "Columns of A")->required()->check(CLI::PositiveNumber);
  vhist->add_option("--field", o.field, "Scalar field")->check(CLI::IsMember({"real", "complex"}));
  vhist->add_option("--trials", o.trials, "Trial count")->check(CLI::PositiveNumber);
  vhist->add_option("--bins", o.bins, "Bin count")->check(CLI::PositiveNumber);
  vhist->add_option("--seed", o.seed, "RNG seed");
  vhist->add_option("--workers", o.workers, "Worker threads (accepted; run is serial)");
  vhist->add_option("-o,--output", o.output, "Output file (default: stdout)");
  add_tol_flags(vhist, o);
  vhist->callback([&] { cmd_verify_histogram(o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const awkit::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const awkit::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const awkit::InvalidMatrixError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const awkit::SingularityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const awkit::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const awkit::RegimeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 6;
  } catch (const awkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return o.exit_code;
}
