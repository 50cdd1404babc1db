#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "fracsob/density_estimator.hpp"
#include "fracsob/diagnostics.hpp"
#include "fracsob/error.hpp"
#include "fracsob/harness.hpp"
#include "fracsob/minimax_kernel.hpp"
#include "fracsob/prior.hpp"
#include "fracsob/theorem2.hpp"

namespace fracsob::harness {
namespace {

std::string num(double v, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

struct Verdict {
  bool pass;
  std::string detail;
};

// Reference values of gamma(beta, L) from a 40-digit evaluation.
struct PinskerReference {
  double beta, L;
  const char* gamma;
};
constexpr PinskerReference kPinsker[] = {
    {1.0, 0.5, "0.33618410364209062134"},  {1.0, 1.0, "0.42356542881870966897"},
    {1.0, 4.0, "0.67236820728418124268"},  {0.75, 0.5, "0.33089332807705464687"},
    {0.75, 1.0, "0.43661636401964424979"}, {0.75, 4.0, "0.76019324328321377928"},
    {1.5, 0.5, "0.34356469753230845891"},  {1.5, 1.0, "0.40856958276917902418"},
    {1.5, 4.0, "0.57780464512528978002"},  {2.0, 0.5, "0.34753223739739015097"},
    {2.0, 1.0, "0.39920970940682111699"},  {2.0, 4.0, "0.52676036961964876451"},
};

ExperimentConfig risk_config(const ExperimentConfig& base, std::vector<double> n_list, std::size_t reps) {
  ExperimentConfig c = base;
  c.command = "risk";
  c.beta = 2.0;
  c.L = 1.0;
  c.density = "gaussian";
  c.fill = 0.5;
  c.n_list = std::move(n_list);
  c.reps = reps;
  c.grid_points = 0;
  c.out.clear();
  return c;
}

ExperimentConfig theorem2_config(const ExperimentConfig& base, double beta) {
  ExperimentConfig c = base;
  c.command = "theorem2";
  c.beta = beta;
  c.L = 1.0;
  c.A_list = {10, 20, 40};
  c.budget = 1000;
  c.grid_points = 0;
  c.out.clear();
  return c;
}

Verdict criterion_pinsker(const ExperimentConfig& base) {
  double worst = 0.0;
  std::string where;
  for (const PinskerReference& r : kPinsker) {
    ExperimentConfig c = base;
    c.beta = r.beta;
    c.L = r.L;
    const double got = run_pinsker(c).table.at(0, "pinsker_gamma");
    const double rel = std::abs(got - std::stod(r.gamma)) / std::stod(r.gamma);
    if (rel >= worst) {
      worst = rel;
      where = "beta=" + num(r.beta) + " L=" + num(r.L);
    }
  }
  return {worst <= 1e-12, "max relative error " + num(worst, 3) + " at " + where + " (limit 1e-12)"};
}

Verdict criterion_kernel() {
  double worst = 0.0;
  std::string where;
  for (double beta : {0.75, 1.0, 1.5, 2.0})
    for (double n : {1e3, 1e5}) {
      const KernelSpec spec = KernelSpec::minimax({beta, 1.0}, n);
      const SpectralFunction F = forward_transform(kernel_time_domain(spec));
      for (std::size_t k = 0; k < F.size(); ++k) {
        if (std::abs(F.omega(k)) > spec.omega_edge()) continue;
        const double err = std::abs(F[k] - complex(kernel_hat(spec, F.omega(k)), 0.0));
        if (err >= worst) {
          worst = err;
          where = "beta=" + num(beta) + " n=" + num(n);
        }
      }
    }
  return {worst <= 1e-5, "max |F[K] - K_hat| on |w| <= w_edge is " + num(worst, 3) + " at " + where};
}

Verdict criterion_mise_oracle(const ExperimentConfig& base) {
  const ResultTable t = run_risk(risk_config(base, {500}, 2000)).table;
  const double mc = t.at(0, "mise_mc"), se = t.at(0, "mise_mc_se"), exact = t.at(0, "mise_exact");
  const double z = std::abs(mc - exact) / se;
  return {z <= 3.0, "MC " + num(mc, 8) + " +- " + num(se, 3) + " vs exact " + num(exact, 8) + " (" + num(z, 3) +
                        " SE)"};
}

Verdict criterion_upper_trend(const ExperimentConfig& base) {
  const ResultTable t = run_risk(risk_config(base, {1e3, 1e4, 1e5}, 1000)).table;
  const auto scaled = t.column("scaled_risk");
  const auto se = t.column("scaled_risk_se");
  const auto exact = t.column("scaled_risk_exact");
  const double gamma = t.at(0, "pinsker_gamma");
  bool trend = true;
  std::string detail = "scaled/gamma:";
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    detail += " " + num(scaled[i] / gamma, 4) + "+-" + num(se[i] / gamma, 2) + " (exact " +
              num(exact[i] / gamma, 4) + ")";
    if (i > 0 && scaled[i] > scaled[i - 1] + 2.0 * std::hypot(se[i], se[i - 1])) trend = false;
  }
  const bool bound = scaled.back() <= 1.2 * gamma;
  detail += std::string("; (a) nonincreasing within 2 SE: ") + (trend ? "yes" : "no") +
            "; (b) <= 1.2 gamma at n=1e5: " + (bound ? "yes" : "no");
  return {trend && bound, detail};
}

Verdict criterion_theorem2(const ExperimentConfig& base) {
  bool pass = true;
  std::string detail;
  for (double beta : {0.75, 1.5}) {
    const ResultTable t = run_theorem2(theorem2_config(base, beta)).table;
    const auto A = t.column("A"), s = t.column("seminorm_sq");
    double best10 = 0.0, best40 = 0.0;
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (A[i] == 10.0) best10 = std::max(best10, s[i]);
      if (A[i] == 40.0) best40 = std::max(best40, s[i]);
    }
    const bool in_window = best40 >= 0.7 && best40 <= 1.1;
    const bool shrinks = std::abs(best40 - 1.0) < std::abs(best10 - 1.0);
    pass = pass && in_window && shrinks;
    detail += (detail.empty() ? "" : "; ") + std::string("beta=") + num(beta) + ": sup(A=10) " + num(best10) +
              ", sup(A=40) " + num(best40) + (in_window ? "" : " outside [0.7, 1.1]") +
              (shrinks ? "" : ", gap did not shrink");
  }
  return {pass, detail};
}

// Random member of the coefficient set: sparse Gaussian direction scaled by U times the
// distance to the boundary.
Theta random_member(const ParameterSet& set, int k_cap, RngStream& rng) {
  std::uniform_int_distribution<int> size(1, 8), freq(1, k_cap);
  Theta theta;
  const int s = size(rng);
  for (int i = 0; i < s; ++i) {
    const int k = freq(rng);
    theta.set(rng.uniform() < 0.5 ? k : -k, rng.normal());
  }
  if (theta.empty()) return theta;
  const double lambda = std::min(set.l1_budget() / theta.l1(),
                                 std::sqrt(set.quad_budget() / theta.weighted_sq(set.A, set.beta)));
  const double u = 1.0 - rng.uniform();
  std::vector<ThetaTerm> terms(theta.terms().begin(), theta.terms().end());
  for (ThetaTerm& t : terms) t.value *= lambda * u;
  return Theta(std::move(terms));
}

Verdict criterion_normalizer(const ExperimentConfig& base) {
  std::size_t checked = 0, violations = 0;
  double worst = 0.0;
  for (double beta : {0.75, 1.5})
    for (double A : {4.0, 10.0, 20.0, 40.0}) {
      const ParameterSet set{A, beta, 1.0};
      const auto grid = std::make_shared<const LfGrid>(A);
      RngStream rng(derive_seed(base.seed, 6), static_cast<std::uint64_t>(A * 10 + beta * 1000));
      for (int trial = 0; trial < 1000; ++trial) {
        const Theta theta = random_member(set, 1000, rng);
        if (!theta_membership(theta, set).member) continue;
        const PerturbedDensity pd = build_f_theta(theta, grid);
        ++checked;
        worst = std::max(worst, std::abs(pd.b - 1.0) * std::pow(A, 1.5));
        if (!pd.normalizer_in_bracket()) ++violations;
      }
    }
  return {violations == 0 && checked == 8000,
          std::to_string(violations) + " of " + std::to_string(checked) +
              " draws outside the bracket; max |b-1| A^{3/2} = " + num(worst, 3)};
}

Verdict criterion_identity(const ExperimentConfig& base) {
  RngStream rng(derive_seed(base.seed, 7), 0);
  std::uniform_int_distribution<int> freq(1, 50);
  const double As[] = {4.0, 10.0, 20.0, 40.0};
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double A = As[trial % 4];
    const double gamma = 4.0 * rng.uniform();
    Theta theta;
    while (theta.nnz() < 5) {
      const int k = freq(rng);
      theta.set(rng.uniform() < 0.5 ? k : -k, rng.normal());
    }
    worst = std::max(worst, derivative_identity_check(theta, A, gamma).relative_gap);
  }
  return {worst <= 1e-3, "max relative gap " + num(worst, 3) + " over 100 cases (limit 1e-3)"};
}

Verdict criterion_fd_diagnostics() {
  const double A = 40.0;
  const auto grid = std::make_shared<const LfGrid>(A);
  const PerturbedDensity pd = build_f_theta(Theta{}, grid);
  std::vector<double> fisher, deriv;
  bool richardson = true;
  for (int kappa : {1, -1, 5, -5, 10, -10}) {
    fisher.push_back(fisher_info_numeric(pd, kappa));
    const FiniteDifference fd = fourier_coeff_derivative_numeric(pd, kappa, default_fd_step(0.0, A, 1.0));
    deriv.push_back(fd.value);
    richardson = richardson && fd.richardson_ok;
  }
  auto summarize = [](const std::vector<double>& v, double target, bool& ok, std::string& out) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    double mean = 0.0, worst = 0.0;
    for (double x : v) {
      mean += x / static_cast<double>(v.size());
      worst = std::max(worst, std::abs(x / target - 1.0));
    }
    const double spread = (*hi - *lo) / mean;
    ok = worst <= 0.15 && spread < 0.05;
    out = "max deviation " + num(100 * worst, 3) + "%, spread " + num(100 * spread, 3) + "%";
  };
  bool ok_fisher = false, ok_deriv = false;
  std::string d_fisher, d_deriv;
  summarize(fisher, 1.0 / (2.0 * A), ok_fisher, d_fisher);
  summarize(deriv, 1.0 / (2.0 * std::sqrt(A)), ok_deriv, d_deriv);
  return {ok_fisher && ok_deriv && richardson, "Fisher vs 1/(2A): " + d_fisher + "; coefficient derivative vs "
                                                "1/(2 sqrt A): " + d_deriv +
                                                   (richardson ? "" : "; Richardson check failed")};
}

Verdict criterion_van_trees() {
  std::vector<double> ratios;
  for (double n : {1e4, 1e5, 1e6}) {
    const PriorSpec spec = prior_spec(1.0, 1.0, n, 0.01, schedule_A(n));
    ratios.push_back(van_trees_bound(spec) / van_trees_closed_form(1.0, 1.0, n, 0.01));
  }
  bool monotone = true;
  for (std::size_t i = 1; i < ratios.size(); ++i)
    monotone = monotone && std::abs(ratios[i] - 1.0) < std::abs(ratios[i - 1] - 1.0);
  const bool window = ratios.back() >= 0.95 && ratios.back() <= 1.05;
  return {monotone && window, "ratios " + num(ratios[0], 8) + ", " + num(ratios[1], 8) + ", " + num(ratios[2], 8) +
                                  (monotone ? "" : " (not approaching 1)") + (window ? "" : " (outside [0.95, 1.05])")};
}

Verdict criterion_prior_tail(const ExperimentConfig& base) {
  const double n = 1e6;
  const double A = std::ceil(std::log(n));
  const PriorSpec spec = prior_spec(1.0, 1.0, n, 0.01, A);
  const ParameterSet set{A, 1.0, 1.0};
  const TailProbability p = prior_tail_probability(spec, set, 10000, derive_seed(base.seed, 10), base.workers);
  return {p.failures == 0, std::to_string(p.failures) + "/" + std::to_string(p.trials) + " failures (l1 " +
                               std::to_string(p.l1_failures) + ", quadratic " + std::to_string(p.quad_failures) +
                               "); mean l1 " + num(p.mean_l1, 4) + " vs budget " + num(set.l1_budget(), 4) +
                               ", mean quadratic " + num(p.mean_quad, 6) + " vs budget " +
                               num(set.quad_budget(), 6)};
}

Verdict criterion_determinism(const ExperimentConfig& base) {
  std::vector<std::pair<std::string, ExperimentConfig>> runs;
  ExperimentConfig c = base;
  c.out.clear();
  c.command = "pinsker";
  runs.emplace_back("pinsker", c);
  c.command = "kernel";
  c.n = 1e4;
  runs.emplace_back("kernel", c);
  runs.emplace_back("risk", risk_config(base, {500}, 2000));
  c = base;
  c.out.clear();
  c.command = "lower-bound";
  c.n = 1e5;
  c.trials = 1000;
  runs.emplace_back("lower-bound", c);
  runs.emplace_back("theorem2 beta=0.75", theorem2_config(base, 0.75));
  runs.emplace_back("theorem2 beta=1.5", theorem2_config(base, 1.5));

  std::string mismatched;
  for (auto& [name, config] : runs) {
    ExperimentConfig one = config, many = config;
    one.workers = 1;
    many.workers = 3;
    std::ostringstream sink;
    const std::string a = execute(one, sink).table.body();
    const std::string b = execute(many, sink).table.body();
    if (a != b || a.empty()) mismatched += (mismatched.empty() ? "" : ", ") + name;
  }
  return {mismatched.empty(),
          mismatched.empty() ? "CSV bodies identical across reruns with 1 and 3 workers"
                             : "bodies differ for " + mismatched};
}

}  // namespace

std::vector<int> criterion_ids() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}; }

CriterionResult run_criterion(int id, const ExperimentConfig& base) {
  static const std::pair<const char*, double> info[] = {
      {"Pinsker constant", 1},          {"kernel self-consistency", 10}, {"MISE oracle equivalence", 120},
      {"upper-bound trend", 300},       {"lower-bound sweep", 600},        {"normalizer bracket", 60},
      {"derivative norm identity", 60}, {"finite-difference diagnostics", 60},     {"van Trees chain", 10},
      {"prior constraint audit", 120},           {"determinism", 720},
  };
  require(id >= 1 && id <= 11, Errc::invalid_argument, "criteria are numbered 1 to 11");
  CriterionResult r;
  r.id = id;
  r.name = info[id - 1].first;
  r.budget_seconds = info[id - 1].second;
  const auto start = std::chrono::steady_clock::now();
  Verdict v{false, ""};
  try {
    switch (id) {
      case 1: v = criterion_pinsker(base); break;
      case 2: v = criterion_kernel(); break;
      case 3: v = criterion_mise_oracle(base); break;
      case 4: v = criterion_upper_trend(base); break;
      case 5: v = criterion_theorem2(base); break;
      case 6: v = criterion_normalizer(base); break;
      case 7: v = criterion_identity(base); break;
      case 8: v = criterion_fd_diagnostics(); break;
      case 9: v = criterion_van_trees(); break;
      case 10: v = criterion_prior_tail(base); break;
      case 11: v = criterion_determinism(base); break;
    }
  } catch (const std::exception& e) {
    v = {false, std::string("error: ") + e.what()};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.pass = v.pass && r.seconds <= r.budget_seconds;
  r.detail = v.detail;
  if (v.pass && !r.pass) r.detail += "; over the time budget";
  return r;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.pass ? "PASS" : "FAIL") << " criterion " << std::setw(2) << r.id << " " << r.name << ": " << r.detail
    << " [" << std::fixed << std::setprecision(2) << r.seconds << " s of " << std::setprecision(0)
    << r.budget_seconds << " s]";
  return s.str();
}

}  // namespace fracsob::harness
