#include "criteria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pdk/linalg.hpp"
#include "pdk/quadrature.hpp"
#include "pdk/validation.hpp"

namespace pdk::suite {

namespace {

struct Spec {
  int id;
  const char* group;
  const char* title;
};

constexpr Spec kSpecs[] = {
    {1, "pd", "G_r is positive definite on S^2 x [0,pi/2] x R^2"},
    {2, "spd", "sufficient conditions give strictly positive definite Gram matrices"},
    {3, "counterexample", "violated necessary conditions give singular Gram matrices"},
    {4, "cnd", "combinator outputs are conditionally negative definite"},
    {5, "monotonicity", "generalized Stieltjes functions are completely monotone"},
    {6, "identity", "Laplace identity for (s+t)^-lambda"},
    {7, "examples", "worked examples are certified strictly positive definite"},
    {8, "eigen", "Jacobi extremes agree with the inertia-bisection oracle"},
    {9, "open", "critical two-term generators are reported as open"},
};

const Spec& spec(int id) {
  for (const Spec& s : kSpecs) {
    if (s.id == id) return s;
  }
  throw std::out_of_range("no criterion " + std::to_string(id));
}

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

std::uint64_t fixture_seed(const SuiteOptions& o, int criterion, std::size_t index) {
  return mix_seed(o.seed ^ (static_cast<std::uint64_t>(criterion) << 32) ^ index);
}

// Runs certify over fixtures and keeps the worst normalized minimum eigenvalue.
template <class Fixtures>
CriterionResult certify_all(CriterionResult r, const Fixtures& fixtures, const SuiteOptions& o,
                            CertifyMode mode, double min_sep, bool require_spd_report) {
  r.pass = !fixtures.empty();
  double worst = INFINITY;
  std::string worst_name;
  std::size_t index = 0;
  for (const auto& fx : fixtures) {
    if (require_spd_report && spd_report(fx.model).verdict != SpdVerdict::SpdGuaranteed) {
      r.pass = false;
      r.detail += fx.name + " is not reported SPD_guaranteed; ";
      continue;
    }
    CertifyOptions opts;
    opts.n = 30;
    opts.trials = 100;
    opts.seed = fixture_seed(o, r.id, index++);
    opts.mode = mode;
    opts.min_sep = min_sep;
    opts.threads = o.threads;
    const auto result = certify(fx.model, opts);
    if (!result.all_pass()) {
      r.pass = false;
      r.detail += fx.name + " failed; ";
    }
    const auto& w = result.worst_report();
    const double normalized = w.min_eig / w.scale;
    if (normalized < worst) {
      worst = normalized;
      worst_name = fx.name;
    }
  }
  r.detail += std::to_string(fixtures.size()) + " models x 100 trials, worst min_eig/scale " +
              fmt("%.3e", worst) + " (" + worst_name + ")";
  return r;
}

CriterionResult criterion_pd(CriterionResult r, const SuiteOptions& o) {
  return certify_all(std::move(r), pd_fixtures(), o, CertifyMode::Psd, 1e-6, false);
}

CriterionResult criterion_spd(CriterionResult r, const SuiteOptions& o) {
  return certify_all(std::move(r), spd_fixtures(), o, CertifyMode::Spd, 0.05, true);
}

CriterionResult criterion_counterexample(CriterionResult r, const SuiteOptions& o) {
  r.pass = true;
  double worst_det = 0.0;
  double worst_eig = -INFINITY;
  std::size_t index = 0;
  const auto fixtures = clause_fixtures();
  for (const auto& fx : fixtures) {
    const auto report = spd_report(fx.model);
    if (report.verdict != SpdVerdict::NecessaryConditionViolated || report.violated != fx.clause) {
      r.pass = false;
      r.detail += fx.name + " reported " + to_string(report.verdict) + "; ";
      continue;
    }
    const Counterexample cx = counterexample_2x2(fx.model, fx.clause);
    const double det_ratio = std::abs(cx.det) / (cx.scale * cx.scale);
    worst_det = std::max(worst_det, det_ratio);
    if (!(det_ratio <= 1e-12)) {
      r.pass = false;
      r.detail += fx.name + " |det| too large; ";
    }

    CertifyOptions opts;
    opts.n = 30;
    opts.trials = 1;
    opts.seed = fixture_seed(o, r.id, index++);
    opts.mode = CertifyMode::Spd;
    opts.min_sep = 0.05;
    opts.embed = fx.clause;
    opts.threads = 1;
    const CertifyResult result = certify(fx.model, opts);
    const GramReport& rep = result.worst_report();
    const double eig_ratio = rep.min_eig / rep.scale;
    worst_eig = std::max(worst_eig, eig_ratio);
    if (!(eig_ratio <= 1e-10)) {
      r.pass = false;
      r.detail += fx.name + " embedded min_eig not singular; ";
    }
  }
  r.detail += std::to_string(fixtures.size()) + " clauses, max |det|/scale^2 " +
              fmt("%.3e", worst_det) + ", max embedded min_eig/scale " + fmt("%.3e", worst_eig);
  return r;
}

CriterionResult criterion_cnd(CriterionResult r, const SuiteOptions& o) {
  r.pass = true;
  double worst = -INFINITY;
  const auto fixtures = cnd_fixtures();
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const auto& fx = fixtures[i];
    fx.phi.check_domain(fx.spaces);
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
      const std::uint64_t seed = mix_seed(fixture_seed(o, r.id, i) ^ trial);
      const auto points = sample_distinct(fx.spaces, 20, seed);
      const auto v = check_cnd_empirical(fx.phi, fx.spaces, points, 1e-9, seed);
      worst = std::max(worst, v.max_eig / v.scale);
      if (!v.pass) {
        r.pass = false;
        r.detail += fx.name + " failed at seed " + std::to_string(seed) + "; ";
        break;
      }
    }
  }
  r.detail += std::to_string(fixtures.size()) + " functions x 50 configurations, max projected eig/scale " +
              fmt("%.3e", worst);
  return r;
}

CriterionResult criterion_monotonicity(CriterionResult r, const SuiteOptions& o) {
  Rng rng(fixture_seed(o, r.id, 0));
  std::vector<double> grid(12);
  for (int i = 0; i < 12; ++i) grid[i] = 0.1 + (5.0 - 0.1) * i / 11.0;
  r.pass = true;
  int failures = 0;
  for (int k = 0; k < 20; ++k) {
    const double lambda = rng.uniform(0.25, 3.0);
    const double c = rng.uniform(0.0, 1.0);
    const double d = rng.uniform() < 0.5 ? rng.uniform(0.0, 2.0) : 0.0;
    std::vector<Atom> atoms;
    const std::size_t count = rng.below(4);
    for (std::size_t a = 0; a < count; ++a) atoms.push_back({rng.uniform(0.1, 10.0), rng.uniform(0.1, 3.0)});
    const StieltjesFunction f(lambda, c, d, DiscreteMeasure(atoms));
    const auto report =
        check_complete_monotonicity([&](double w) { return eval_stieltjes(f, w); }, grid, 8);
    if (!report.pass()) {
      r.pass = false;
      ++failures;
    }
  }
  r.detail = "20 random functions, order 8 on 12 points in [0.1, 5], " + std::to_string(failures) +
             " failures";
  return r;
}

CriterionResult criterion_identity(CriterionResult r, const SuiteOptions&) {
  double worst = 0.0;
  for (double lambda : {0.5, 1.0, 2.0})
    for (double s : {0.5, 1.0, 2.0})
      for (double t : {0.5, 1.0, 2.0}) worst = std::max(worst, stieltjes_kernel_identity_check(lambda, s, t, 64));
  r.pass = worst <= 1e-8;
  r.detail = "27 (lambda, s, t) triples, n_quad=64, max relative error " + fmt("%.3e", worst);
  return r;
}

CriterionResult criterion_examples(CriterionResult r, const SuiteOptions& o) {
  return certify_all(std::move(r), example_fixtures(), o, CertifyMode::Spd, 0.05, true);
}

CriterionResult criterion_eigen(CriterionResult r, const SuiteOptions& o) {
  double worst = 0.0;
  Rng rng(fixture_seed(o, r.id, 0));
  for (int k = 0; k < 200; ++k) {
    const int n = 1 + static_cast<int>(rng.below(8));
    Eigen::MatrixXd a = oracle::random_symmetric(n, static_cast<unsigned>(rng.below(1u << 31)));
    if (k % 2 == 1) a = oracle::centered(a);
    const auto got = sym_eig_extremes(a);
    const auto [lo, hi] = oracle::eigen_extremes(a);
    worst = std::max({worst, std::abs(got.min - lo), std::abs(got.max - hi)});
  }
  r.pass = worst <= 1e-10;
  r.detail = "200 symmetric matrices (half centered), n <= 8, max deviation " + fmt("%.3e", worst);
  return r;
}

CriterionResult criterion_open(CriterionResult r, const SuiteOptions&) {
  r.pass = true;
  const auto fixtures = open_case_fixtures();
  for (const auto& fx : fixtures) {
    const auto v = spd_report(fx.model).verdict;
    if (v != SpdVerdict::OpenCase) {
      r.pass = false;
      r.detail += fx.name + " reported " + to_string(v) + "; ";
    }
  }
  r.detail += std::to_string(fixtures.size()) + " two-term generators at r=lambda";
  return r;
}

}  // namespace

std::vector<int> criterion_ids() {
  std::vector<int> ids;
  for (const Spec& s : kSpecs) ids.push_back(s.id);
  return ids;
}

std::string criterion_group(int id) { return spec(id).group; }
std::string criterion_title(int id) { return spec(id).title; }

bool matches_filter(int id, const std::string& filter) {
  return filter.empty() || filter == "all" || filter == criterion_group(id) ||
         filter == std::to_string(id);
}

CriterionResult run_criterion(int id, const SuiteOptions& options) {
  CriterionResult r;
  r.id = id;
  r.group = criterion_group(id);
  r.title = criterion_title(id);
  const CriterionResult header = r;
  try {
    switch (id) {
      case 1: return criterion_pd(std::move(r), options);
      case 2: return criterion_spd(std::move(r), options);
      case 3: return criterion_counterexample(std::move(r), options);
      case 4: return criterion_cnd(std::move(r), options);
      case 5: return criterion_monotonicity(std::move(r), options);
      case 6: return criterion_identity(std::move(r), options);
      case 7: return criterion_examples(std::move(r), options);
      case 8: return criterion_eigen(std::move(r), options);
      case 9: return criterion_open(std::move(r), options);
    }
  } catch (const std::exception& e) {
    r = header;
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  return r;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& options) {
  std::vector<CriterionResult> out;
  for (int id : criterion_ids()) {
    if (matches_filter(id, options.filter)) out.push_back(run_criterion(id, options));
  }
  return out;
}

}  // namespace pdk::suite
