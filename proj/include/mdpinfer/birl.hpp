#pragma once

#include <cstdint>
#include <vector>

#include "mdpinfer/mdp.hpp"
#include "mdpinfer/rng.hpp"
#include "mdpinfer/trajectory.hpp"

namespace mdpinfer {

struct BirlConfig {
  double eta = 5.0;             // softmax confidence of the behavior model
  double proposal_sigma = 0.1;  // random-walk proposal scale
  std::vector<double> prior_lo; // uniform prior box, componentwise
  std::vector<double> prior_hi;
  int n_samples = 5000;
  int burn_in = 1000;
  std::uint64_t seed = 0;
  enum class Estimator { kMean, kMedian };
  Estimator estimator = Estimator::kMedian;
  double vi_tol = 1e-9;
  int vi_max_iter = 10000;

  /// Box [lo, hi]^dim.
  static BirlConfig with_box(int dim, double lo = -1.0, double hi = 1.0);

  void validate() const;
  bool in_box(const RewardParams& theta) const;
  RewardParams box_center() const;
};

struct PosteriorSummary {
  RewardParams point_estimate;
  std::vector<std::vector<double>> samples;  // post-burn-in theta draws
  double acceptance_rate = 0.0;              // accepted / proposed over the whole chain
  std::vector<double> log_likelihood_trace;  // one entry per chain step
};

/// Log of the Boltzmann trajectory likelihood,
///   sum over observed (s,a) of [eta Q*(s,a) - logsumexp_a' eta Q*(s,a')].
/// The state-transition factor is independent of theta and omitted. An empty
/// dataset yields 0 without solving the MDP.
double log_likelihood(const Mdp& mdp, const RewardParams& theta,
                      const TrajectoryDataset& data, double eta,
                      double vi_tol = 1e-9, int vi_max_iter = 10000);

/// Same sum evaluated on an already-solved Q table.
double log_likelihood_from_q(const QFunction& q, const TrajectoryDataset& data, double eta);

/// Metropolis-Hastings chain over reward parameters under a uniform box prior.
/// Holds the current theta and its cached log-likelihood so each step costs a
/// single value-iteration solve (for the proposal). Proposals falling outside
/// the box are rejected before any solve.
class BirlChain {
 public:
  /// Starts at the prior-box center.
  BirlChain(const Mdp& mdp, const TrajectoryDataset& data, const BirlConfig& cfg);
  BirlChain(const Mdp& mdp, const TrajectoryDataset& data, const BirlConfig& cfg,
            RewardParams init);

  /// One MH transition; returns true if the proposal was accepted.
  bool step(Rng& rng);

  const RewardParams& theta() const { return theta_; }
  double current_log_likelihood() const { return log_lik_; }
  int accepted() const { return accepted_; }
  int proposed() const { return proposed_; }

 private:
  const Mdp* mdp_;
  const TrajectoryDataset* data_;
  const BirlConfig* cfg_;
  RewardParams theta_;
  double log_lik_;
  int accepted_ = 0;
  int proposed_ = 0;
};

/// One MH transition from theta0; returns the accepted proposal or theta0.
RewardParams sample_theta_step(const Mdp& mdp, const RewardParams& theta0,
                               const TrajectoryDataset& data, const BirlConfig& cfg,
                               Rng& rng);

/// Full chain: box-center start, cfg.n_samples steps, burn-in discarded,
/// point estimate per cfg.estimator. Deterministic given cfg.seed.
PosteriorSummary run_birl(const Mdp& mdp, const TrajectoryDataset& data, const BirlConfig& cfg);

/// Componentwise mean / median over a set of parameter vectors.
std::vector<double> componentwise_mean(const std::vector<std::vector<double>>& rows);
std::vector<double> componentwise_median(const std::vector<std::vector<double>>& rows);

}  // namespace mdpinfer
