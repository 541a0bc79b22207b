#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

#include "awkit/core.hpp"
#include "awkit/density.hpp"
#include "awkit/eigensolver.hpp"
#include "awkit/ensemble.hpp"
#include "awkit/errors.hpp"
#include "awkit/hermitian.hpp"
#include "awkit/matrix.hpp"
#include "awkit/scalar.hpp"
#include "awkit/tolerances.hpp"

namespace awkit {

namespace detail {

inline double kahan_sum(const std::vector<double>& v) {
  double s = 0.0, c = 0.0;
  for (const double x : v) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

/// Evaluates fn(t) for t in [0, trials) into a vector indexed by trial.
/// Workers only split the loop; the result is identical for any worker
/// count because every slot depends on its trial index alone.
template <typename Fn>
std::vector<double> per_trial_values(std::size_t trials, std::size_t workers, Fn&& fn) {
  std::vector<double> vals(trials);
  if (workers <= 1 || trials < 2) {
    for (std::size_t t = 0; t < trials; ++t) vals[t] = fn(t);
    return vals;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const std::size_t count = std::min(workers, trials);
  pool.reserve(count);
  for (std::size_t w = 0; w < count; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t t = next.fetch_add(1);
        if (t >= trials) return;
        vals[t] = fn(t);
      }
    });
  for (auto& th : pool) th.join();
  return vals;
}

}  // namespace detail

/// Random hermitian matrix (not positive definite in general): real
/// standard-normal diagonal, Gaussian off-diagonal entries mirrored by
/// conjugation. Fuzzing input for the determinantal identities.
template <ScalarType T>
HermMatrix<T> random_hermitian(std::size_t dim, std::uint64_t key) {
  NormalStream g(key);
  Matrix<T> upper(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    upper(i, i) = T{g.next()};
    for (std::size_t j = i + 1; j < dim; ++j) upper(i, j) = sample_entry<T>(g);
  }
  return HermMatrix<T>::from_upper(upper);
}

/// Checks that AA† and A†A carry the same nonzero spectrum: the smaller
/// matrix's eigenvalues must match the top min(n, k) eigenvalues of the
/// larger one, and the larger one's remaining |n - k| eigenvalues must
/// vanish, everything relative to tol times the larger Gram scale.
template <ScalarType T>
bool spectral_coincidence(const Matrix<T>& a, double tol = 1e-9) {
  const auto left = gram(conj_transpose(a));
  const auto right = gram(a);
  std::vector<double> sl = spectrum(left);
  std::vector<double> sr = spectrum(right);
  std::sort(sl.rbegin(), sl.rend());
  std::sort(sr.rbegin(), sr.rend());
  const double scale = std::max(scale_of(left), scale_of(right));
  const std::size_t small = std::min(sl.size(), sr.size());
  for (std::size_t i = 0; i < small; ++i)
    if (std::abs(sl[i] - sr[i]) > tol * scale) return false;
  const auto& longer = sl.size() >= sr.size() ? sl : sr;
  for (std::size_t i = small; i < longer.size(); ++i)
    if (std::abs(longer[i]) > tol * scale) return false;
  return true;
}

struct MomentReport {
  int moment_order = 1;
  double empirical = 0.0;
  double analytic = 0.0;
  double mc_stderr = 0.0;
  std::size_t trials = 0;
  /// Two-sided acceptance: |empirical - analytic| within 3 standard errors.
  bool pass = false;
};

namespace detail {

inline MomentReport make_moment_report(int order, const std::vector<double>& vals,
                                       double analytic) {
  MomentReport rep;
  rep.moment_order = order;
  rep.trials = vals.size();
  rep.analytic = analytic;
  rep.empirical = kahan_sum(vals) / static_cast<double>(vals.size());
  std::vector<double> sq(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double d = vals[i] - rep.empirical;
    sq[i] = d * d;
  }
  const double var = kahan_sum(sq) / static_cast<double>(vals.size() - 1);
  rep.mc_stderr = std::sqrt(var / static_cast<double>(vals.size()));
  rep.pass = std::abs(rep.empirical - rep.analytic) <= 3.0 * rep.mc_stderr;
  return rep;
}

}  // namespace detail

/// Analytic mean of tr(A†A)^order over the Gaussian ensemble: order 1 is
/// nk (complex) or nk/2 (real); order 2 is nk(n+k) (complex) or
/// nk(n+k+1)/4 (real).
inline double analytic_trace_moment(std::size_t n, std::size_t k, Field field,
                                    int order) {
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  if (order == 1) return field == Field::Complex ? nd * kd : nd * kd / 2.0;
  if (order == 2)
    return field == Field::Complex ? nd * kd * (nd + kd)
                                   : nd * kd * (nd + kd + 1.0) / 4.0;
  throw DomainError("moment order must be 1 or 2");
}

/// Monte Carlo mean of tr(omega)^[order] against its analytic value.
/// Order 1 averages the trace, order 2 the trace of the square. Per-trial
/// draws are keyed by (seed, trial), so the report is independent of the
/// worker count.
template <ScalarType T>
MomentReport moment_test(const EnsembleSpec& spec, int order, std::size_t trials,
                         std::size_t workers = 1) {
  detail::check_spec<T>(spec);
  if (order != 1 && order != 2) throw DomainError("moment order must be 1 or 2");
  if (trials < 100) throw DomainError("moment test needs at least 100 trials");
  const auto values = detail::per_trial_values(trials, workers, [&](std::size_t t) {
    const auto omega = sample_wishart<T>(spec, t);
    if (order == 1) return omega.trace();
    double frob = 0.0;
    for (const auto& v : omega.matrix().entries()) frob += abs_sq(v);
    return frob;
  });
  return detail::make_moment_report(
      order, values, analytic_trace_moment(spec.n, spec.k, spec.field, order));
}

/// Gamma-law check for the scalar k = 1 complex case: both the mean and
/// the variance of the 1-by-1 Gram value must come out at n.
struct GammaShapeReport {
  MomentReport mean;
  MomentReport variance;
  bool pass = false;
};

inline GammaShapeReport gamma_shape_test(std::size_t n, std::size_t trials,
                                         std::uint64_t seed = 0,
                                         std::size_t workers = 1) {
  if (n < 1) throw DomainError("row count must be positive");
  if (trials < 1000) throw DomainError("gamma shape test needs at least 1000 trials");
  const EnsembleSpec spec{n, 1, Field::Complex, seed};
  const auto values = detail::per_trial_values(trials, workers, [&](std::size_t t) {
    return sample_wishart<cplx>(spec, t).trace();
  });
  GammaShapeReport rep;
  rep.mean = detail::make_moment_report(1, values, static_cast<double>(n));
  const double mu = rep.mean.empirical;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - mu;
    sq[i] = d * d;
  }
  const double td = static_cast<double>(trials);
  const double s2 = detail::kahan_sum(sq) * (1.0 / (td - 1.0));
  std::vector<double> quart(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) quart[i] = sq[i] * sq[i];
  const double m4 = detail::kahan_sum(quart) / td;
  rep.variance.moment_order = 2;
  rep.variance.trials = trials;
  rep.variance.analytic = static_cast<double>(n);
  rep.variance.empirical = s2;
  rep.variance.mc_stderr = std::sqrt(std::max(0.0, m4 - s2 * s2) / td);
  rep.variance.pass =
      std::abs(s2 - rep.variance.analytic) <= 3.0 * rep.variance.mc_stderr;
  rep.pass = rep.mean.pass && rep.variance.pass;
  return rep;
}

struct IdentityFuzzReport {
  std::size_t trials = 0;
  double max_rel_residual = 0.0;
  bool pass = false;
};

/// Relative residual of the three-term minor identity at one index choice
/// (i >= 1; absolute labels l, m > i):
///
///   det leading(i-1) * det bordered(i, l, m)
///     = det bordered(i-1, l, m) * det bordered(i-1, i, i)
///     - det bordered(i-1, l, i) * det bordered(i-1, i, m)
///
/// The residual is normalized by the largest participating magnitude, so
/// cancellation between the two right-hand products is not mistaken for
/// error.
template <ScalarType T>
double identity_residual(const HermMatrix<T>& om, std::size_t i, std::size_t l,
                         std::size_t m) {
  if (i < 1 || i >= om.dim()) throw DomainError("identity index out of range");
  const T lhs = determinant(leading_principal(om.matrix(), i - 1)) *
                determinant(bordered(om.matrix(), i, l, m));
  const T t1 = determinant(bordered(om.matrix(), i - 1, l, m)) *
               determinant(bordered(om.matrix(), i - 1, i, i));
  const T t2 = determinant(bordered(om.matrix(), i - 1, l, i)) *
               determinant(bordered(om.matrix(), i - 1, i, m));
  const T rhs = t1 - t2;
  const double denom = std::max(
      {1e-30, abs_val(lhs), abs_val(rhs), abs_val(t1), abs_val(t2)});
  return abs_val(lhs - rhs) / denom;
}

/// Fuzzes the minor identity on random hermitian matrices with random
/// valid (i, l, m). Passes when every residual stays below 1e-8.
template <ScalarType T>
IdentityFuzzReport identity_fuzz(std::size_t trials,
                                 std::pair<std::size_t, std::size_t> dim_range,
                                 std::uint64_t seed = 0) {
  if (dim_range.first < 3 || dim_range.second > 10 ||
      dim_range.first > dim_range.second)
    throw DomainError("fuzz dimensions must lie within [3, 10]");
  IdentityFuzzReport rep;
  rep.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t key = stream_key(seed, t);
    SplitMix64 pick(key);
    const std::size_t d =
        dim_range.first + pick.next() % (dim_range.second - dim_range.first + 1);
    const std::size_t i = 1 + pick.next() % (d - 1);
    const std::size_t l = i + 1 + pick.next() % (d - i);
    const std::size_t m = i + 1 + pick.next() % (d - i);
    const auto om = random_hermitian<T>(d, mix64(key ^ 0x706865726d697466ull));
    rep.max_rel_residual =
        std::max(rep.max_rel_residual, identity_residual(om, i, l, m));
  }
  rep.pass = rep.max_rel_residual < 1e-8;
  return rep;
}

/// Pooled histogram of the nonzero spectrum across trials. Values below
/// the vanish tolerance (times the per-draw matrix scale) are counted as
/// zero modes and kept out of the bins; in the n < k regime there are
/// k - n of them per draw. Bin edges run uniformly from 0 to the largest
/// observed value.
struct Histogram {
  std::vector<double> bin_edges;
  std::vector<std::size_t> counts;
  std::size_t total = 0;
  std::size_t zero_modes = 0;
};

template <ScalarType T>
Histogram eigen_histogram(const EnsembleSpec& spec, std::size_t trials,
                          std::size_t bins, const Tolerances& tols = {}) {
  detail::check_spec<T>(spec);
  if (trials < 1) throw DomainError("histogram needs at least one trial");
  if (bins < 1) throw DomainError("histogram needs at least one bin");
  Histogram h;
  std::vector<double> pool;
  pool.reserve(trials * std::min(spec.n, spec.k));
  for (std::size_t t = 0; t < trials; ++t) {
    const auto omega = sample_wishart<T>(spec, t);
    const double cut = tols.vanish * scale_of(omega);
    for (const double l : spectrum(omega)) {
      if (std::abs(l) < cut)
        ++h.zero_modes;
      else
        pool.push_back(l);
    }
  }
  double top = 0.0;
  for (const double v : pool) top = std::max(top, v);
  if (top <= 0.0) top = 1.0;
  h.bin_edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b)
    h.bin_edges[b] = top * static_cast<double>(b) / static_cast<double>(bins);
  h.counts.assign(bins, 0);
  for (const double v : pool) {
    auto idx = static_cast<std::size_t>(v / top * static_cast<double>(bins));
    if (idx >= bins) idx = bins - 1;
    ++h.counts[idx];
  }
  h.total = pool.size();
  return h;
}

}  // namespace awkit
