#pragma once

#include <vector>

#include "mdpinfer/errors.hpp"
#include "mdpinfer/grid.hpp"

namespace mdpinfer {

/// Weight vector for a linearly parametrized reward: R(s,a) = theta . phi(s,a).
struct RewardParams {
  std::vector<double> theta;

  int dim() const { return static_cast<int>(theta.size()); }
  friend bool operator==(const RewardParams&, const RewardParams&) = default;
};

/// Finite MDP with a feature map instead of a fixed reward table. The reward
/// is supplied per query as a RewardParams vector.
struct Mdp {
  int num_states = 0;
  int num_actions = 0;
  Grid3 transitions;  // (s, a, s') -> probability
  Grid3 features;     // (s, a, k)  -> phi_k(s, a)
  double discount = 0.9;
  std::vector<double> initial_dist;

  int feature_dim() const { return features.dim2(); }

  /// Throws std::invalid_argument if shapes, stochasticity (1e-9), or the
  /// discount range are violated.
  void validate() const;
};

/// State-action values, bounded by max|R| / (1 - discount).
struct QFunction {
  Grid2 values;  // (s, a)

  int num_states() const { return values.rows(); }
  int num_actions() const { return values.cols(); }
};

/// Row-stochastic action distribution per state.
struct StochasticPolicy {
  Grid2 probs;  // (s, a)

  int num_states() const { return probs.rows(); }
  int num_actions() const { return probs.cols(); }
};

/// R(s,a) = theta . phi(s,a) for every state-action pair.
/// Throws std::invalid_argument when theta's dimension does not match the
/// MDP's feature dimension.
Grid2 reward_of(const Mdp& mdp, const RewardParams& theta);

/// Exact value iteration for the optimal Q of the reward-parametrized MDP.
///
/// Stops once the sup-norm delta between successive iterates is at most
/// tol * (1 - nu) / nu, which bounds both the Bellman residual of the
/// returned table by that same quantity and its sup-norm distance from the
/// exact Q* by tol. Throws ConvergenceError (carrying the last delta) if
/// max_iter is hit first.
QFunction mdp_vi(const Mdp& mdp, const RewardParams& theta, double tol = 1e-9,
                 int max_iter = 10000);

/// Boltzmann policy: row s is softmax(eta * Q(s, .)), computed with per-row
/// max subtraction so large eta does not overflow.
StochasticPolicy softmax_policy(const QFunction& q, double eta);

/// Greedy action per state, lowest index winning ties.
std::vector<int> greedy_actions(const QFunction& q);

struct PolicyValue {
  std::vector<double> per_state;  // V^pi(s)
  double total = 0.0;             // sum_s X(s) V^pi(s)
};

/// Iterative policy evaluation of a stochastic policy to sup-norm tolerance
/// tol (same contraction-based stopping rule as mdp_vi).
PolicyValue policy_value(const Mdp& mdp, const RewardParams& theta,
                         const StochasticPolicy& policy, double tol = 1e-9);

/// log of sum of exp over a contiguous range; safe for -inf entries.
double log_sum_exp(const double* begin, int n);

}  // namespace mdpinfer
