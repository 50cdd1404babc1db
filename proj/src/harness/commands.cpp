#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "fracsob/density_estimator.hpp"
#include "fracsob/error.hpp"
#include "fracsob/harness.hpp"
#include "fracsob/minimax_kernel.hpp"
#include "fracsob/prior.hpp"
#include "fracsob/theorem2.hpp"

namespace fracsob::harness {
namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

SobolevClass sobolev_class(const ExperimentConfig& c) { return {c.beta, c.L}; }

struct RiskDensity {
  GridFunction f;
  std::string label;
};

// Evaluation grid covers the nominal support times the padding factor, with enough points
// that every kernel in the sweep stays below 2/3 of the grid Nyquist.
std::size_t risk_grid_points(const ExperimentConfig& c, double length) {
  if (c.grid_points != 0) return c.grid_points;
  double edge = 0.0;
  for (double n : c.n_list) edge = std::max(edge, KernelSpec::minimax(sobolev_class(c), n).omega_edge());
  std::size_t points = 4096;
  while (kPi * static_cast<double>(points) / length < 1.5 * edge) points *= 2;
  return points;
}

RiskDensity risk_density(const ExperimentConfig& c) {
  if (c.density == "gaussian") {
    const double sd = in_class_gaussian_sd(sobolev_class(c), c.fill);
    const Interval support = symmetric(c.padding * 4.0 * sd);
    return {gaussian_density(sd, support, risk_grid_points(c, support.length())),
            "gaussian(sd=" + fmt(sd) + ")"};
  }
  if (c.density == "f0") {
    const Interval support = symmetric(c.padding * 0.5);
    return {BumpDensity(1.0).on_grid(support, risk_grid_points(c, support.length())), "f0(a=1)"};
  }
  if (c.density == "ftheta") {
    const ParameterSet set{c.A, c.beta, c.L};
    const int k = extremal_frequency(set);
    const std::size_t points = risk_grid_points(c, 2.0 * LfGrid::kPad * c.A);
    const PerturbedDensity pd = build_f_theta(Theta({{k, set.l1_budget()}}),
                                              std::make_shared<const LfGrid>(c.A, points));
    return {pd.density, "ftheta(A=" + fmt(c.A) + ",k=" + std::to_string(k) + ")"};
  }
  throw Error(Errc::invalid_argument, "unknown density '" + c.density + "' (gaussian, f0, ftheta)");
}

VarianceConvention variance_convention(const std::string& name) {
  if (name == "2A") return VarianceConvention::two_a;
  if (name == "4A") return VarianceConvention::four_a;
  throw Error(Errc::invalid_argument, "unknown variance convention '" + name + "' (2A, 4A)");
}

}  // namespace

CommandOutput run_pinsker(const ExperimentConfig& config) {
  const double gamma = pinsker_constant(sobolev_class(config));
  CommandOutput out{ResultTable({"beta", "L", "pinsker_gamma"}), "", 0};
  out.table.add_row({config.beta, config.L, gamma});
  stamp_metadata(out.table, config);
  out.summary = "gamma(beta=" + fmt(config.beta) + ", L=" + fmt(config.L) + ") = " + fmt(gamma);
  return out;
}

CommandOutput run_kernel(const ExperimentConfig& config) {
  const SobolevClass cls = sobolev_class(config);
  const KernelSpec spec = KernelSpec::minimax(cls, config.n);
  KernelGrid grid = default_kernel_grid(spec);
  if (config.grid_points != 0) {
    const double dx = grid.support.length() / static_cast<double>(grid.n_points);
    grid = {symmetric(0.5 * dx * static_cast<double>(config.grid_points)), config.grid_points};
  }
  const GridFunction K = kernel_time_domain(spec, grid.support, grid.n_points);
  CommandOutput out{ResultTable({"x", "value"}), "", 0};
  for (std::size_t j = 0; j < K.size(); ++j) out.table.add_row({K.x(j), K[j]});
  stamp_metadata(out.table, config);
  out.table.set_meta("c_min", fmt(spec.c));
  out.table.set_meta("omega_edge", fmt(spec.omega_edge()));
  out.table.set_meta("pinsker_gamma", fmt(pinsker_constant(cls)));
  out.summary = "c_min = " + fmt(spec.c) + ", omega_edge = " + fmt(spec.omega_edge()) +
                ", gamma = " + fmt(pinsker_constant(cls));
  return out;
}

CommandOutput run_risk(const ExperimentConfig& config) {
  const SobolevClass cls = sobolev_class(config);
  const RiskDensity density = risk_density(config);
  const SpectralFunction f_hat = forward_transform(density.f);
  const double gamma = pinsker_constant(cls);
  const double rate = 2.0 * cls.beta / (2.0 * cls.beta + 1.0);

  CommandOutput out{ResultTable({"n", "mise_mc", "mise_mc_se", "mise_exact", "scaled_risk", "pinsker_gamma",
                                 "scaled_risk_se", "scaled_risk_exact", "exact_variance_term",
                                 "exact_bias_term"}),
                    "", 0};
  std::string summary;
  for (std::size_t i = 0; i < config.n_list.size(); ++i) {
    const double n = config.n_list[i];
    require(n >= 1.0 && n == std::floor(n), Errc::invalid_argument, "sample sizes must be integers >= 1");
    const KernelSpec spec = KernelSpec::minimax(cls, n);
    const MiseTerms terms = exact_mise_terms(f_hat, kernel_hat(spec, f_hat));
    const MiseEstimate mc = monte_carlo_mise(density.f, cls, static_cast<std::size_t>(n), config.reps,
                                             derive_seed(config.seed, i), {config.workers});
    const double scale = std::pow(n, rate);
    out.table.add_row({n, mc.mean, mc.std_error, terms.at(n), scale * mc.mean, gamma, scale * mc.std_error,
                       scale * terms.at(n), terms.variance / n, terms.bias});
    summary += (i ? "; " : "") + std::string("n=") + fmt(n) + " scaled=" + fmt(scale * mc.mean);
  }
  const Membership m = class_membership(density.f, cls);
  stamp_metadata(out.table, config);
  out.table.set_meta("density", density.label);
  out.table.set_meta("seminorm_sq", fmt(m.seminorm_sq));
  out.table.set_meta("class_member", m.member ? "yes" : "no (warning: density outside the class)");
  out.summary = density.label + ": " + summary + " (gamma " + fmt(gamma) + ")";
  return out;
}

CommandOutput run_lower_bound(const ExperimentConfig& config) {
  const double n = config.n;
  const double A = schedule_A(n);
  const PriorSpec spec = prior_spec(config.beta, config.L, n, config.eps, A, variance_convention(config.variance));
  const ParameterSet set{A, config.beta, config.L};
  const double vt = van_trees_bound(spec);
  const double closed = van_trees_closed_form(config.beta, config.L, n, config.eps);

  TailProbability tail;
  if (config.trials > 0) tail = prior_tail_probability(spec, set, config.trials, config.seed, config.workers);

  CommandOutput out{ResultTable({"n", "A", "W", "active", "van_trees", "closed_form", "ratio", "trials",
                                 "failures", "failure_rate", "ci_lo", "ci_hi", "l1_failures", "quad_failures",
                                 "mean_l1", "l1_budget", "mean_quad", "quad_budget"}),
                    "", 0};
  out.table.add_row({n, A, spec.W, 2.0 * spec.k_limit(), vt, closed, vt / closed,
                     static_cast<double>(tail.trials), static_cast<double>(tail.failures), tail.frequency,
                     tail.ci.lo, tail.ci.hi, static_cast<double>(tail.l1_failures),
                     static_cast<double>(tail.quad_failures), tail.mean_l1, set.l1_budget(), tail.mean_quad,
                     set.quad_budget()});
  stamp_metadata(out.table, config);
  out.table.set_meta("xi_fisher_information", fmt(spec.xi.fisher_information()));
  out.summary = "van Trees " + fmt(vt) + " / closed form " + fmt(closed) + " = " + fmt(vt / closed);
  if (config.trials > 0)
    out.summary += "; " + std::to_string(tail.failures) + "/" + std::to_string(tail.trials) +
                   " prior draws outside the coefficient set";
  return out;
}

CommandOutput run_theorem2(const ExperimentConfig& config) {
  Theorem2Options options;
  options.budget = config.budget;
  options.seed = config.seed;
  options.workers = config.workers;
  if (config.grid_points != 0) options.min_grid_points = config.grid_points;
  const auto rows = theorem2_sweep(config.beta, config.L, config.A_list, options);

  CommandOutput out{ResultTable({"A", "grid_points", "probe", "kind", "nnz", "k_min", "k_max", "l1", "l1_budget",
                                 "quad", "quad_budget", "seminorm_sq", "gap", "best_so_far", "is_best",
                                 "theta0_bound"}),
                    "", 0};
  std::string summary;
  for (const Theorem2Row& row : rows) {
    const ParameterSet set{row.A, config.beta, config.L};
    double best_so_far = 0.0;
    for (const ProbeResult& p : row.probes) {
      best_so_far = std::max(best_so_far, p.seminorm_sq);
      out.table.add_row({row.A, static_cast<double>(row.grid_points), static_cast<double>(p.index),
                         static_cast<double>(static_cast<int>(p.kind)), static_cast<double>(p.nnz),
                         static_cast<double>(p.k_min), static_cast<double>(p.k_max), p.l1, set.l1_budget(), p.quad,
                         set.quad_budget(), p.seminorm_sq, p.seminorm_sq - config.L, best_so_far,
                         p.index == row.best.index ? 1.0 : 0.0, row.theta0_bound});
    }
    summary += (summary.empty() ? "" : "; ") + std::string("A=") + fmt(row.A) + " sup>=" +
               fmt(row.best.seminorm_sq) + " (k=" + std::to_string(row.best.k_max) + ")";
  }
  stamp_metadata(out.table, config);
  out.table.set_meta("probe_kinds", "0 zero, 1 single, 2 pair, 3 band, 4 random");
  out.summary = summary;
  return out;
}

CommandOutput run_accept(const ExperimentConfig& config, std::ostream& log) {
  if (config.suite != "primary")
    throw Error(Errc::invalid_argument, "unknown suite '" + config.suite + "' (primary)");
  std::vector<int> ids = criterion_ids();
  if (config.criterion != 0) ids = {config.criterion};

  CommandOutput out{ResultTable({"criterion", "pass", "seconds", "budget_seconds"}), "", 0};
  int failed = 0;
  for (int id : ids) {
    const CriterionResult r = run_criterion(id, config);
    log << format_result(r) << std::endl;
    out.table.add_row({static_cast<double>(r.id), r.pass ? 1.0 : 0.0, r.seconds, r.budget_seconds});
    if (!r.pass) {
      ++failed;
      out.summary += (out.summary.empty() ? "failed: " : ", ") + std::to_string(r.id) + " (" + r.name + ")";
    }
  }
  stamp_metadata(out.table, config);
  if (failed == 0) out.summary = "all " + std::to_string(ids.size()) + " criteria passed";
  out.exit_code = failed == 0 ? 0 : 1;
  return out;
}

CommandOutput execute(const ExperimentConfig& config, std::ostream& log) {
  if (config.command == "pinsker") return run_pinsker(config);
  if (config.command == "kernel") return run_kernel(config);
  if (config.command == "risk") return run_risk(config);
  if (config.command == "lower-bound") return run_lower_bound(config);
  if (config.command == "theorem2") return run_theorem2(config);
  if (config.command == "accept") return run_accept(config, log);
  throw Error(Errc::invalid_argument, "unknown command '" + config.command + "'");
}

int run_command(const ExperimentConfig& config, std::ostream& out, std::ostream& log) {
  const CommandOutput result = execute(config, log);

  if (config.out.empty()) {
    result.table.write(out);
  } else {
    std::ofstream file(config.out);
    require(file.good(), Errc::io_error, "cannot open '" + config.out + "' for writing");
    result.table.write(file);
    require(file.good(), Errc::io_error, "failed writing '" + config.out + "'");
  }
  log << result.summary << std::endl;
  return result.exit_code;
}

}  // namespace fracsob::harness
