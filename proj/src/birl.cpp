#include "mdpinfer/birl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mdpinfer {

void TrajectoryDataset::validate_against(const Mdp& mdp) const {
  for (const auto& traj : trajectories) {
    if (traj.steps.empty()) {
      throw std::invalid_argument("Trajectory for user '" + traj.user_id + "' is empty");
    }
    for (const auto& step : traj.steps) {
      if (step.state < 0 || step.state >= mdp.num_states || step.action < 0 ||
          step.action >= mdp.num_actions) {
        throw std::invalid_argument("Trajectory for user '" + traj.user_id +
                                    "' references state " + std::to_string(step.state) +
                                    ", action " + std::to_string(step.action) +
                                    " outside the MDP");
      }
    }
  }
}

BirlConfig BirlConfig::with_box(int dim, double lo, double hi) {
  BirlConfig cfg;
  cfg.prior_lo.assign(dim, lo);
  cfg.prior_hi.assign(dim, hi);
  return cfg;
}

void BirlConfig::validate() const {
  if (prior_lo.size() != prior_hi.size() || prior_lo.empty()) {
    throw std::invalid_argument("BirlConfig: prior box bounds must be non-empty and aligned");
  }
  for (std::size_t k = 0; k < prior_lo.size(); ++k) {
    if (!(prior_lo[k] < prior_hi[k])) {
      throw std::invalid_argument("BirlConfig: prior_lo must be strictly below prior_hi");
    }
  }
  if (eta < 0.0) throw std::invalid_argument("BirlConfig: eta must be non-negative");
  if (proposal_sigma < 0.0) throw std::invalid_argument("BirlConfig: proposal_sigma < 0");
  if (n_samples <= 0) throw std::invalid_argument("BirlConfig: n_samples must be positive");
  if (burn_in < 0 || burn_in >= n_samples) {
    throw std::invalid_argument("BirlConfig: burn_in must lie in [0, n_samples)");
  }
}

bool BirlConfig::in_box(const RewardParams& theta) const {
  if (theta.theta.size() != prior_lo.size()) return false;
  for (std::size_t k = 0; k < prior_lo.size(); ++k) {
    if (theta.theta[k] < prior_lo[k] || theta.theta[k] > prior_hi[k]) return false;
  }
  return true;
}

RewardParams BirlConfig::box_center() const {
  RewardParams theta;
  theta.theta.resize(prior_lo.size());
  for (std::size_t k = 0; k < prior_lo.size(); ++k) {
    theta.theta[k] = 0.5 * (prior_lo[k] + prior_hi[k]);
  }
  return theta;
}

double log_likelihood_from_q(const QFunction& q, const TrajectoryDataset& data, double eta) {
  const int na = q.num_actions();
  // Per-state logsumexp of eta*Q(s, .), computed once; trajectories revisit states.
  std::vector<double> lse(q.num_states());
  std::vector<double> row(na);
  for (int s = 0; s < q.num_states(); ++s) {
    for (int a = 0; a < na; ++a) row[a] = eta * q.values(s, a);
    lse[s] = log_sum_exp(row.data(), na);
  }
  double ll = 0.0;
  for (const auto& traj : data.trajectories) {
    for (const auto& step : traj.steps) {
      ll += eta * q.values(step.state, step.action) - lse[step.state];
    }
  }
  return ll;
}

double log_likelihood(const Mdp& mdp, const RewardParams& theta, const TrajectoryDataset& data,
                      double eta, double vi_tol, int vi_max_iter) {
  if (data.total_steps() == 0) return 0.0;
  data.validate_against(mdp);
  QFunction q = mdp_vi(mdp, theta, vi_tol, vi_max_iter);
  return log_likelihood_from_q(q, data, eta);
}

namespace {

double chain_log_likelihood(const Mdp& mdp, const RewardParams& theta,
                            const TrajectoryDataset& data, const BirlConfig& cfg) {
  if (data.total_steps() == 0) return 0.0;
  return log_likelihood_from_q(mdp_vi(mdp, theta, cfg.vi_tol, cfg.vi_max_iter), data, cfg.eta);
}

}  // namespace

BirlChain::BirlChain(const Mdp& mdp, const TrajectoryDataset& data, const BirlConfig& cfg)
    : BirlChain(mdp, data, cfg, cfg.box_center()) {}

BirlChain::BirlChain(const Mdp& mdp, const TrajectoryDataset& data, const BirlConfig& cfg,
                     RewardParams init)
    : mdp_(&mdp), data_(&data), cfg_(&cfg), theta_(std::move(init)) {
  cfg.validate();
  if (!cfg.in_box(theta_)) {
    throw std::invalid_argument("BirlChain: initial theta lies outside the prior box");
  }
  log_lik_ = chain_log_likelihood(mdp, theta_, data, cfg);
}

bool BirlChain::step(Rng& rng) {
  ++proposed_;
  RewardParams proposal = theta_;
  for (double& x : proposal.theta) x += cfg_->proposal_sigma * rng.normal();
  if (!cfg_->in_box(proposal)) {
    // Uniform prior density is zero out there; no need to solve the MDP.
    return false;
  }
  double proposal_ll = chain_log_likelihood(*mdp_, proposal, *data_, *cfg_);
  double log_ratio = proposal_ll - log_lik_;
  if (log_ratio < 0.0 && std::log(rng.uniform()) >= log_ratio) {
    return false;
  }
  theta_ = std::move(proposal);
  log_lik_ = proposal_ll;
  ++accepted_;
  return true;
}

RewardParams sample_theta_step(const Mdp& mdp, const RewardParams& theta0,
                               const TrajectoryDataset& data, const BirlConfig& cfg, Rng& rng) {
  BirlChain chain(mdp, data, cfg, theta0);
  chain.step(rng);
  return chain.theta();
}

std::vector<double> componentwise_mean(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("componentwise_mean: no rows");
  std::vector<double> out(rows.front().size(), 0.0);
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += row[k];
  }
  for (double& x : out) x /= static_cast<double>(rows.size());
  return out;
}

std::vector<double> componentwise_median(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("componentwise_median: no rows");
  const std::size_t n = rows.size();
  std::vector<double> out(rows.front().size());
  std::vector<double> column(n);
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) column[i] = rows[i][k];
    std::sort(column.begin(), column.end());
    out[k] = (n % 2 == 1) ? column[n / 2] : 0.5 * (column[n / 2 - 1] + column[n / 2]);
  }
  return out;
}

PosteriorSummary run_birl(const Mdp& mdp, const TrajectoryDataset& data, const BirlConfig& cfg) {
  cfg.validate();
  data.validate_against(mdp);
  Rng rng(cfg.seed);
  BirlChain chain(mdp, data, cfg);

  PosteriorSummary out;
  out.samples.reserve(cfg.n_samples - cfg.burn_in);
  out.log_likelihood_trace.reserve(cfg.n_samples);
  for (int i = 0; i < cfg.n_samples; ++i) {
    chain.step(rng);
    out.log_likelihood_trace.push_back(chain.current_log_likelihood());
    if (i >= cfg.burn_in) out.samples.push_back(chain.theta().theta);
  }
  out.acceptance_rate =
      static_cast<double>(chain.accepted()) / static_cast<double>(chain.proposed());
  out.point_estimate.theta = (cfg.estimator == BirlConfig::Estimator::kMean)
                                 ? componentwise_mean(out.samples)
                                 : componentwise_median(out.samples);
  return out;
}

}  // namespace mdpinfer
