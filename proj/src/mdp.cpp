#include "mdpinfer/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mdpinfer {

namespace {
constexpr double kStochasticTol = 1e-9;
}

void Mdp::validate() const {
  if (num_states <= 0 || num_actions <= 0) {
    throw std::invalid_argument("Mdp: state and action counts must be positive");
  }
  if (transitions.dim0() != num_states || transitions.dim1() != num_actions ||
      transitions.dim2() != num_states) {
    throw std::invalid_argument("Mdp: transition table shape mismatch");
  }
  if (features.dim0() != num_states || features.dim1() != num_actions) {
    throw std::invalid_argument("Mdp: feature table shape mismatch");
  }
  if (!(discount > 0.0 && discount < 1.0)) {
    throw std::invalid_argument("Mdp: discount must lie in (0, 1)");
  }
  if (static_cast<int>(initial_dist.size()) != num_states) {
    throw std::invalid_argument("Mdp: initial distribution length mismatch");
  }
  for (int s = 0; s < num_states; ++s) {
    for (int a = 0; a < num_actions; ++a) {
      double sum = 0.0;
      for (int t = 0; t < num_states; ++t) {
        double p = transitions(s, a, t);
        if (p < 0.0) {
          throw std::invalid_argument("Mdp: negative transition probability at (" +
                                      std::to_string(s) + "," + std::to_string(a) + ")");
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > kStochasticTol) {
        throw std::invalid_argument("Mdp: transition row (" + std::to_string(s) + "," +
                                    std::to_string(a) + ") sums to " + std::to_string(sum));
      }
    }
  }
  double x_sum = 0.0;
  for (double x : initial_dist) {
    if (x < 0.0) throw std::invalid_argument("Mdp: negative initial probability");
    x_sum += x;
  }
  if (std::abs(x_sum - 1.0) > kStochasticTol) {
    throw std::invalid_argument("Mdp: initial distribution sums to " + std::to_string(x_sum));
  }
}

Grid2 reward_of(const Mdp& mdp, const RewardParams& theta) {
  if (theta.dim() != mdp.feature_dim()) {
    throw std::invalid_argument("reward_of: theta dimension " + std::to_string(theta.dim()) +
                                " does not match feature dimension " +
                                std::to_string(mdp.feature_dim()));
  }
  Grid2 r(mdp.num_states, mdp.num_actions);
  const int n = theta.dim();
  for (int s = 0; s < mdp.num_states; ++s) {
    for (int a = 0; a < mdp.num_actions; ++a) {
      double dot = 0.0;
      for (int k = 0; k < n; ++k) dot += theta.theta[k] * mdp.features(s, a, k);
      r(s, a) = dot;
    }
  }
  return r;
}

QFunction mdp_vi(const Mdp& mdp, const RewardParams& theta, double tol, int max_iter) {
  if (tol <= 0.0) throw std::invalid_argument("mdp_vi: tol must be positive");
  const Grid2 reward = reward_of(mdp, theta);
  const int ns = mdp.num_states;
  const int na = mdp.num_actions;
  const double nu = mdp.discount;
  // Delta threshold that puts the result within tol of the exact fixed point.
  const double stop_delta = tol * (1.0 - nu) / nu;

  Grid2 q(ns, na);
  std::vector<double> v(ns, 0.0);  // max_a Q(s, a) of the previous iterate
  double delta = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < max_iter; ++iter) {
    delta = 0.0;
    for (int s = 0; s < ns; ++s) {
      for (int a = 0; a < na; ++a) {
        double exp_v = 0.0;
        for (int t = 0; t < ns; ++t) exp_v += mdp.transitions(s, a, t) * v[t];
        double updated = reward(s, a) + nu * exp_v;
        delta = std::max(delta, std::abs(updated - q(s, a)));
        q(s, a) = updated;
      }
    }
    for (int s = 0; s < ns; ++s) {
      double best = q(s, 0);
      for (int a = 1; a < na; ++a) best = std::max(best, q(s, a));
      v[s] = best;
    }
    if (delta <= stop_delta) return QFunction{std::move(q)};
  }
  throw ConvergenceError("mdp_vi: no convergence within iteration limit", delta, max_iter);
}

StochasticPolicy softmax_policy(const QFunction& q, double eta) {
  if (eta < 0.0) throw std::invalid_argument("softmax_policy: eta must be non-negative");
  const int ns = q.num_states();
  const int na = q.num_actions();
  Grid2 probs(ns, na);
  for (int s = 0; s < ns; ++s) {
    double row_max = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < na; ++a) row_max = std::max(row_max, eta * q.values(s, a));
    double sum = 0.0;
    for (int a = 0; a < na; ++a) {
      double e = std::exp(eta * q.values(s, a) - row_max);
      probs(s, a) = e;
      sum += e;
    }
    for (int a = 0; a < na; ++a) probs(s, a) /= sum;
  }
  return StochasticPolicy{std::move(probs)};
}

std::vector<int> greedy_actions(const QFunction& q) {
  std::vector<int> actions(q.num_states(), 0);
  for (int s = 0; s < q.num_states(); ++s) {
    double best = q.values(s, 0);
    for (int a = 1; a < q.num_actions(); ++a) {
      if (q.values(s, a) > best) {
        best = q.values(s, a);
        actions[s] = a;
      }
    }
  }
  return actions;
}

PolicyValue policy_value(const Mdp& mdp, const RewardParams& theta,
                         const StochasticPolicy& policy, double tol) {
  if (policy.num_states() != mdp.num_states || policy.num_actions() != mdp.num_actions) {
    throw std::invalid_argument("policy_value: policy shape mismatch");
  }
  const Grid2 reward = reward_of(mdp, theta);
  const int ns = mdp.num_states;
  const int na = mdp.num_actions;
  const double nu = mdp.discount;
  const double stop_delta = tol * (1.0 - nu) / nu;

  // Expected per-state reward and state-to-state kernel under the policy.
  std::vector<double> r_pi(ns, 0.0);
  Grid2 p_pi(ns, ns);
  for (int s = 0; s < ns; ++s) {
    for (int a = 0; a < na; ++a) {
      double pa = policy.probs(s, a);
      if (pa == 0.0) continue;
      r_pi[s] += pa * reward(s, a);
      for (int t = 0; t < ns; ++t) p_pi(s, t) += pa * mdp.transitions(s, a, t);
    }
  }

  std::vector<double> v(ns, 0.0);
  std::vector<double> next(ns, 0.0);
  // Contraction in nu; the iteration cap is generous enough for any tol the
  // callers use.
  for (int iter = 0; iter < 1000000; ++iter) {
    double delta = 0.0;
    for (int s = 0; s < ns; ++s) {
      double exp_v = 0.0;
      for (int t = 0; t < ns; ++t) exp_v += p_pi(s, t) * v[t];
      next[s] = r_pi[s] + nu * exp_v;
      delta = std::max(delta, std::abs(next[s] - v[s]));
    }
    v.swap(next);
    if (delta <= stop_delta) break;
  }

  PolicyValue out;
  out.per_state = v;
  for (int s = 0; s < ns; ++s) out.total += mdp.initial_dist[s] * v[s];
  return out;
}

double log_sum_exp(const double* begin, int n) {
  double m = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) m = std::max(m, begin[i]);
  if (!std::isfinite(m)) return m;  // all -inf (or a +inf dominates)
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += std::exp(begin[i] - m);
  return m + std::log(sum);
}

}  // namespace mdpinfer
