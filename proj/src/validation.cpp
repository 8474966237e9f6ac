#include "pdk/validation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "pdk/errors.hpp"
#include "pdk/linalg.hpp"

namespace pdk {

Eigen::MatrixXd gram(const KernelModel& model, std::span<const ProductPoint> points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  const auto& spaces = model.spaces();
  for (const ProductPoint& p : points) validate_point(spaces, p);

  Eigen::MatrixXd a(n, n);
  const double diag = model.at_origin();
  for (Eigen::Index j = 0; j < n; ++j) {
    a(j, j) = diag;
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const auto d = component_distances(spaces, points[j], points[k]);
      double value;
      try {
        value = model(d);
      } catch (const DomainError& e) {
        throw DomainError("pair (" + std::to_string(j) + ", " + std::to_string(k) +
                          "): " + e.what());
      }
      a(j, k) = value;
      a(k, j) = value;
    }
  }
  return a;
}

EigExtremes sym_eig_extremes(const Eigen::MatrixXd& a) {
  if (a.rows() > 512) {
    throw ArgumentError("eigen extremes limited to n <= 512, got " + std::to_string(a.rows()));
  }
  if (a.rows() == 0) throw ArgumentError("empty matrix");
  const auto result = jacobi_eigenvalues(a);
  return {result.eigenvalues(0), result.eigenvalues(result.eigenvalues.size() - 1)};
}

std::string gram_csv(const Eigen::MatrixXd& a) {
  std::string out = "# n=" + std::to_string(a.rows()) + "\n";
  char buf[32];
  for (Eigen::Index j = 0; j < a.rows(); ++j) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", a(j, k));
      if (k > 0) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::string to_string(CertifyMode m) { return m == CertifyMode::Psd ? "psd" : "spd"; }

std::string to_string(GramVerdict v) {
  switch (v) {
    case GramVerdict::PsdPass: return "PSD_pass";
    case GramVerdict::PsdFail: return "PSD_fail";
    case GramVerdict::SpdPass: return "SPD_pass";
    case GramVerdict::SpdFail: return "SPD_fail";
  }
  return "unknown";
}

GramReport assess_gram(const Eigen::MatrixXd& a, const CertifyOptions& options) {
  GramReport r;
  r.n = static_cast<std::size_t>(a.rows());
  const auto eig = sym_eig_extremes(a);
  r.min_eig = eig.min;
  r.max_eig = eig.max;
  r.symmetry_residual = (a - a.transpose()).cwiseAbs().maxCoeff();
  r.scale = a.cwiseAbs().maxCoeff();
  r.psd_pass = r.min_eig >= -options.tol_psd * static_cast<double>(r.n) * r.scale;
  if (options.mode == CertifyMode::Psd) {
    r.verdict = r.psd_pass ? GramVerdict::PsdPass : GramVerdict::PsdFail;
  } else {
    r.verdict = r.min_eig > options.tol_spd_floor * r.scale ? GramVerdict::SpdPass
                                                            : GramVerdict::SpdFail;
  }
  return r;
}

bool CertifyResult::all_pass() const {
  return std::all_of(reports.begin(), reports.end(), [](const GramReport& r) { return r.pass(); });
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  return mix_seed(seed ^ static_cast<std::uint64_t>(trial));
}

std::vector<ProductPoint> trial_points(const KernelModel& model, const CertifyOptions& options,
                                       std::uint64_t seed) {
  const auto& spaces = model.spaces();
  if (!options.embed) return sample_distinct(spaces, options.n, seed, options.min_sep);
  const Counterexample cx = counterexample_2x2(model, *options.embed);
  auto points = sample_distinct(spaces, options.n - 2, seed, options.min_sep);
  points.push_back(cx.first);
  points.push_back(cx.second);
  return points;
}

CertifyResult certify(const KernelModel& model, const CertifyOptions& options) {
  if (options.n < 2) throw ParameterError("certify needs n >= 2");
  if (options.n > 512) throw ParameterError("certify supports n <= 512");
  if (options.trials < 1) throw ParameterError("certify needs trials >= 1");
  if (options.mode == CertifyMode::Spd && !(options.min_sep > 0.0)) {
    throw ParameterError("SPD mode needs distinct points (min_sep > 0)");
  }
  if (!(options.min_sep >= 0.0)) throw ParameterError("min_sep must be nonnegative");
  if (!(options.tol_psd >= 0.0) || !(options.tol_spd_floor >= 0.0)) {
    throw ParameterError("tolerances must be nonnegative");
  }

  CertifyResult result;
  result.reports.resize(options.trials);
  std::vector<std::exception_ptr> errors(options.trials);
  const std::string space_desc = product_name(model.spaces());
  const std::string model_desc = model.describe();

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < options.trials; t = next++) {
      try {
        const std::uint64_t seed = trial_seed(options.seed, t);
        const auto points = trial_points(model, options, seed);
        GramReport r = assess_gram(gram(model, points), options);
        r.seed = seed;
        r.trial = t;
        r.space = space_desc;
        r.model = model_desc;
        result.reports[t] = std::move(r);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(options.trials));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (std::size_t t = 0; t < options.trials; ++t) {
    if (!errors[t]) continue;
    try {
      std::rethrow_exception(errors[t]);
    } catch (const std::exception& e) {
      throw TrialError(t, e.what());
    }
  }

  auto normalized = [](const GramReport& r) { return r.scale > 0.0 ? r.min_eig / r.scale : r.min_eig; };
  for (std::size_t t = 1; t < result.reports.size(); ++t) {
    if (normalized(result.reports[t]) < normalized(result.reports[result.worst])) result.worst = t;
  }
  return result;
}

}  // namespace pdk
