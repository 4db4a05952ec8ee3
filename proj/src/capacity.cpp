#include "lorentz/capacity.hpp"

#include <cmath>
#include <future>
#include <limits>

namespace lorentz {

namespace {

struct Problem {
  const MultiPoly<double>& f;
  std::span<const double> alpha;
  const ConeSpec* cone;
  bool project;
};

struct Point {
  std::vector<double> y;
  std::vector<double> x;
  double g = std::numeric_limits<double>::infinity();
  bool ok = false;
};

Point evaluate_at(const Problem& p, std::vector<double> y) {
  Point pt;
  pt.x.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    pt.x[i] = std::exp(y[i]);
    if (!std::isfinite(pt.x[i]) || pt.x[i] <= 0.0) return pt;
  }
  pt.y = std::move(y);
  if (p.cone) {
    try {
      if (!p.cone->contains(pt.x)) return pt;
    } catch (const NumericalError&) {
      return pt;  // overflow far out along the ray counts as infeasible
    }
  }
  const double fx = evaluate(p.f, std::span<const double>(pt.x));
  if (!(fx > 0.0) || !std::isfinite(fx)) return pt;
  double lin = 0.0;
  for (std::size_t i = 0; i < pt.y.size(); ++i) lin += p.alpha[i] * pt.y[i];
  pt.g = std::log(fx) - lin;
  pt.ok = std::isfinite(pt.g);
  return pt;
}

std::vector<double> gradient(const Problem& p, const Point& pt) {
  const double fx = evaluate(p.f, std::span<const double>(pt.x));
  auto grad = gradient_at(p.f, std::span<const double>(pt.x));
  for (std::size_t i = 0; i < grad.size(); ++i) grad[i] = pt.x[i] * grad[i] / fx - p.alpha[i];
  if (p.project) {
    double mean = 0.0;
    for (double v : grad) mean += v;
    mean /= static_cast<double>(grad.size());
    for (double& v : grad) v -= mean;
  }
  return grad;
}

struct Run {
  Point best;
  int iterations = 0;
  bool converged = false;
};

Run descend(const Problem& p, std::vector<double> y0, const CapacityConfig& cfg) {
  Run run;
  run.best = evaluate_at(p, std::move(y0));
  if (!run.best.ok) return run;
  double step = 1.0;
  for (int it = 0; it < cfg.max_iter; ++it) {
    ++run.iterations;
    const auto grad = gradient(p, run.best);
    double gn2 = 0.0;
    for (double v : grad) gn2 += v * v;
    if (!std::isfinite(gn2)) break;
    if (gn2 <= 1e-28) {
      run.converged = true;
      break;
    }
    bool accepted = false;
    double t = step;
    Point next;
    while (t > 1e-16) {
      std::vector<double> y = run.best.y;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] -= t * grad[i];
      next = evaluate_at(p, std::move(y));
      if (next.ok && next.g <= run.best.g - 1e-4 * t * gn2) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      // No feasible descent step at working precision.
      run.converged = true;
      break;
    }
    const double change = run.best.g - next.g;
    run.best = std::move(next);
    step = std::min(2.0 * t, 1e6);
    if (change <= cfg.tol * std::max(1.0, std::abs(run.best.g))) {
      run.converged = true;
      break;
    }
  }
  return run;
}

}  // namespace

CapacityResult capacity_estimate(const MultiPoly<double>& f, std::span<const double> alpha, const ConeSpec* cone,
                                 const CapacityConfig& config) {
  detail::require_length(f, alpha.size(), "capacity_estimate(alpha)");
  for (double a : alpha)
    if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("capacity_estimate: alpha must be nonnegative");
  if (cone && cone->dim() != f.nvars()) throw DimensionError("capacity_estimate: cone dimension != nvars");
  const std::size_t n = f.nvars();
  double alpha_sum = 0.0;
  for (double a : alpha) alpha_sum += a;
  const Problem problem{f, alpha, cone, f.is_homogeneous() && std::abs(alpha_sum - f.degree()) < 1e-12};

  const std::size_t n_starts = std::max<std::size_t>(config.starts, 1);
  std::vector<std::vector<double>> starts{std::vector<double>(n, 0.0)};
  Rng rng(config.seed);
  if (cone) {
    const std::size_t budget = 50 * n_starts;
    for (std::size_t tries = 0; tries < budget && starts.size() < n_starts; ++tries) {
      const auto x = cone->sample_interior(1, rng).front();
      if (!std::all_of(x.begin(), x.end(), [](double v) { return v > 0.0; })) continue;
      std::vector<double> y(n);
      for (std::size_t i = 0; i < n; ++i) y[i] = std::log(x[i]);
      starts.push_back(std::move(y));
    }
  } else {
    std::normal_distribution<double> gauss(0.0, 1.0);
    while (starts.size() < n_starts) {
      std::vector<double> y(n);
      for (auto& v : y) v = gauss(rng);
      starts.push_back(std::move(y));
    }
  }

  std::vector<Run> runs(starts.size());
  const std::size_t workers = std::min(thread_budget(), starts.size());
  if (workers <= 1) {
    for (std::size_t s = 0; s < starts.size(); ++s) runs[s] = descend(problem, starts[s], config);
  } else {
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w)
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t s = w; s < starts.size(); s += workers) runs[s] = descend(problem, starts[s], config);
      }));
    for (auto& j : jobs) j.get();
  }

  CapacityResult result;
  result.starts = starts.size();
  const Run* best = nullptr;
  for (const auto& r : runs) {
    result.iterations += r.iterations;
    if (r.best.ok && (!best || r.best.g < best->best.g)) best = &r;
  }
  if (!best) {
    result.value = std::numeric_limits<double>::infinity();
    result.log_value = std::numeric_limits<double>::infinity();
    return result;
  }
  result.feasible = true;
  result.converged = best->converged;
  result.argmin = best->best.x;
  result.log_value = best->best.g;
  double monomial = 1.0;
  for (std::size_t i = 0; i < n; ++i) monomial *= std::pow(result.argmin[i], alpha[i]);
  result.value = evaluate(f, std::span<const double>(result.argmin)) / monomial;
  if (!std::isfinite(result.value)) throw NumericalError("capacity_estimate: non-finite objective at optimum");
  return result;
}

CapacityAudit capacity_bounds_audit(const MultiPoly<double>& f, std::span<const int> mu,
                                    const CapacityConfig& config, double tol) {
  detail::require_length(f, mu.size(), "capacity_bounds_audit(mu)");
  for (const auto& [e, c] : f.terms())
    if (c < 0.0) throw DomainError("capacity_bounds_audit: negative coefficient");
  CapacityAudit audit;
  audit.f_mu = f.coefficient(mu);
  if (audit.f_mu == 0.0) throw DomainError("capacity_bounds_audit: mu is not in the support");
  const std::vector<double> ones(f.nvars(), 1.0);
  audit.f_at_ones = evaluate(f, ones);
  const std::vector<double> alpha(mu.begin(), mu.end());
  audit.capacity = capacity_estimate(f, alpha, nullptr, config);
  const double cap = audit.capacity.value;
  if (!(audit.f_at_ones >= cap - tol * std::max(1.0, audit.f_at_ones)))
    audit.violations.push_back("f(1) < Cap: " + to_string(audit.f_at_ones) + " < " + to_string(cap));
  if (!(cap >= audit.f_mu - tol))
    audit.violations.push_back("Cap < f_mu: " + to_string(cap) + " < " + to_string(audit.f_mu));
  audit.holds = audit.violations.empty();
  return audit;
}

}  // namespace lorentz
