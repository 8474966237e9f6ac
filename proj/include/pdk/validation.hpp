#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pdk/models.hpp"
#include "pdk/spaces.hpp"

namespace pdk {

/// A_jk = model(component distances of p_j, p_k), built for j <= k and
/// mirrored. The diagonal is model.at_origin(). A pole raises DomainError
/// naming the pair.
Eigen::MatrixXd gram(const KernelModel& model, std::span<const ProductPoint> points);

struct EigExtremes {
  double min = 0.0;
  double max = 0.0;
};

/// Extreme eigenvalues by cyclic Jacobi; n <= 512.
EigExtremes sym_eig_extremes(const Eigen::MatrixXd& a);

/// Row-major CSV with a "# n=<n>" header line.
std::string gram_csv(const Eigen::MatrixXd& a);

enum class CertifyMode { Psd, Spd };
enum class GramVerdict { PsdPass, PsdFail, SpdPass, SpdFail };

std::string to_string(CertifyMode m);
std::string to_string(GramVerdict v);

struct GramReport {
  std::size_t n = 0;
  double min_eig = 0.0;
  double max_eig = 0.0;
  double symmetry_residual = 0.0;
  double scale = 0.0;  // max |A_jk|
  GramVerdict verdict = GramVerdict::PsdFail;
  bool psd_pass = false;  // PSD criterion, reported in both modes
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  std::string space;
  std::string model;

  bool pass() const { return verdict == GramVerdict::PsdPass || verdict == GramVerdict::SpdPass; }
};

struct CertifyOptions {
  std::size_t n = 30;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  double min_sep = 0.05;
  CertifyMode mode = CertifyMode::Psd;
  double tol_psd = 1e-12;
  double tol_spd_floor = 1e-12;
  /// Plant the 2x2 counterexample pair for this clause in every trial.
  std::optional<ViolatedClause> embed;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Classifies a Gram matrix. PSD passes iff min_eig >= -tol_psd n scale,
/// SPD iff min_eig > tol_spd_floor scale.
GramReport assess_gram(const Eigen::MatrixXd& a, const CertifyOptions& options);

struct CertifyResult {
  std::vector<GramReport> reports;  // in trial order
  std::size_t worst = 0;           // index of the smallest min_eig / scale
  bool all_pass() const;
  const GramReport& worst_report() const& { return reports.at(worst); }
  const GramReport& worst_report() const&& = delete;
};

/// Seed of trial k: mix_seed(seed ^ k).
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

/// The points of one trial: n distinct samples, or n - 2 samples plus the
/// counterexample pair when a clause is embedded.
std::vector<ProductPoint> trial_points(const KernelModel& model, const CertifyOptions& options,
                                       std::uint64_t seed);

/// Runs options.trials independent trials, possibly concurrently. Any error
/// inside a trial is rethrown as TrialError carrying the trial index.
CertifyResult certify(const KernelModel& model, const CertifyOptions& options);

}  // namespace pdk
