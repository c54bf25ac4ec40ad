#include <doctest.h>

#include <cmath>
#include <random>

#include "mdpinfer/mdp.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace mdpinfer;

TEST_SUITE("mdp") {

TEST_CASE("reward_of: zero weights give an all-zero table") {
  std::mt19937 gen(7);
  Mdp mdp = testutil::random_mdp(gen, 3, 2, 4);
  RewardParams theta{std::vector<double>(4, 0.0)};
  Grid2 r = reward_of(mdp, theta);
  for (double x : r.data()) CHECK(x == 0.0);
}

TEST_CASE("reward_of: indicator basis picks out one pair") {
  const int ns = 2, na = 3;
  Mdp mdp;
  mdp.num_states = ns;
  mdp.num_actions = na;
  mdp.transitions = Grid3(ns, na, ns);
  for (int s = 0; s < ns; ++s)
    for (int a = 0; a < na; ++a) mdp.transitions(s, a, s) = 1.0;
  mdp.features = Grid3(ns, na, ns * na);
  for (int s = 0; s < ns; ++s)
    for (int a = 0; a < na; ++a) mdp.features(s, a, s * na + a) = 1.0;
  mdp.initial_dist = {0.5, 0.5};

  const int k = 1 * na + 2;  // pair (1, 2)
  RewardParams theta{std::vector<double>(ns * na, 0.0)};
  theta.theta[k] = 1.0;
  Grid2 r = reward_of(mdp, theta);
  for (int s = 0; s < ns; ++s) {
    for (int a = 0; a < na; ++a) {
      CHECK(r(s, a) == (s == 1 && a == 2 ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("reward_of: random table matches a direct dot product") {
  std::mt19937 gen(11);
  Mdp mdp = testutil::random_mdp(gen, 2, 2, 3);
  RewardParams theta = testutil::random_theta(gen, 3);
  Grid2 r = reward_of(mdp, theta);
  for (int s = 0; s < 2; ++s) {
    for (int a = 0; a < 2; ++a) {
      double expected = theta.theta[0] * mdp.features(s, a, 0) +
                        theta.theta[1] * mdp.features(s, a, 1) +
                        theta.theta[2] * mdp.features(s, a, 2);
      CHECK(r(s, a) == doctest::Approx(expected).epsilon(1e-15));
    }
  }
}

TEST_CASE("reward_of: dimension mismatch is rejected") {
  std::mt19937 gen(3);
  Mdp mdp = testutil::random_mdp(gen, 2, 2, 3);
  CHECK_THROWS_AS(reward_of(mdp, RewardParams{{1.0, 2.0}}), std::invalid_argument);
}

TEST_CASE("mdp_vi: zero reward fixes the zero Q") {
  std::mt19937 gen(5);
  Mdp mdp = testutil::random_mdp(gen, 4, 3, 2);
  QFunction q = mdp_vi(mdp, RewardParams{{0.0, 0.0}});
  for (double x : q.values.data()) CHECK(x == 0.0);
}

TEST_CASE("mdp_vi: single-state chain sums the geometric series") {
  Mdp mdp = testutil::chain_mdp(0.9);
  QFunction q = mdp_vi(mdp, RewardParams{{1.0}}, 1e-9);
  CHECK(q.values(0, 0) == doctest::Approx(10.0).epsilon(1e-8));
}

TEST_CASE("mdp_vi: greedy value matches brute-force policy enumeration") {
  std::mt19937 gen(2024);
  for (int rep = 0; rep < 25; ++rep) {
    int ns = 2 + static_cast<int>(gen() % 3);  // 2..4
    int na = 2 + static_cast<int>(gen() % 2);  // 2..3
    Mdp mdp = testutil::random_mdp(gen, ns, na, 3);
    RewardParams theta = testutil::random_theta(gen, 3);

    QFunction q = mdp_vi(mdp, theta, 1e-9);
    std::vector<double> v_greedy = oracle::exact_policy_value(mdp, theta, greedy_actions(q));
    std::vector<double> v_best = oracle::best_enumerated_value(mdp, theta);
    for (int s = 0; s < ns; ++s) {
      CHECK(v_greedy[s] == doctest::Approx(v_best[s]).epsilon(0).scale(1).epsilon(1e-9));
      CHECK(std::abs(v_greedy[s] - v_best[s]) < 1e-6);
    }
  }
}

TEST_CASE("mdp_vi: iteration cap raises with the last residual attached") {
  std::mt19937 gen(9);
  Mdp mdp = testutil::random_mdp(gen, 3, 2, 2);
  RewardParams theta = testutil::random_theta(gen, 2);
  try {
    mdp_vi(mdp, theta, 1e-12, 2);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.last_residual() > 0.0);
    CHECK(e.iterations() == 2);
  }
}

TEST_CASE("mdp_vi: deterministic across repeated calls") {
  std::mt19937 gen(13);
  Mdp mdp = testutil::random_mdp(gen, 4, 3, 3);
  RewardParams theta = testutil::random_theta(gen, 3);
  QFunction a = mdp_vi(mdp, theta);
  QFunction b = mdp_vi(mdp, theta);
  CHECK(a.values == b.values);
}

TEST_CASE("mdp_vi: Bellman residual stays within the stated bound") {
  std::mt19937 gen(77);
  const double tol = 1e-9;
  for (int rep = 0; rep < 20; ++rep) {
    int ns = 2 + static_cast<int>(gen() % 4);
    int na = 2 + static_cast<int>(gen() % 3);
    Mdp mdp = testutil::random_mdp(gen, ns, na, 3);
    RewardParams theta = testutil::random_theta(gen, 3);
    QFunction q = mdp_vi(mdp, theta, tol);
    Grid2 r = reward_of(mdp, theta);

    std::vector<double> v(ns);
    for (int s = 0; s < ns; ++s) {
      double best = q.values(s, 0);
      for (int a = 1; a < na; ++a) best = std::max(best, q.values(s, a));
      v[s] = best;
    }
    double residual = 0.0;
    for (int s = 0; s < ns; ++s) {
      for (int a = 0; a < na; ++a) {
        double backup = r(s, a);
        for (int t = 0; t < ns; ++t) backup += mdp.discount * mdp.transitions(s, a, t) * v[t];
        residual = std::max(residual, std::abs(q.values(s, a) - backup));
      }
    }
    CHECK(residual <= tol * (1.0 - mdp.discount) / mdp.discount);
  }
}

TEST_CASE("mdp_vi: constant reward shift moves Q by c/(1-nu)") {
  std::mt19937 gen(31);
  Mdp mdp = testutil::random_mdp(gen, 3, 2, 2);
  // Widen the feature map with a constant-one column so a theta component
  // adds the same constant to every reward.
  Mdp shifted = mdp;
  shifted.features = Grid3(3, 2, 3);
  for (int s = 0; s < 3; ++s) {
    for (int a = 0; a < 2; ++a) {
      shifted.features(s, a, 0) = mdp.features(s, a, 0);
      shifted.features(s, a, 1) = mdp.features(s, a, 1);
      shifted.features(s, a, 2) = 1.0;
    }
  }
  RewardParams theta = testutil::random_theta(gen, 2);
  const double c = 0.37;
  RewardParams theta_shift{{theta.theta[0], theta.theta[1], c}};

  QFunction q0 = mdp_vi(mdp, theta, 1e-10);
  QFunction q1 = mdp_vi(shifted, theta_shift, 1e-10);
  const double offset = c / (1.0 - mdp.discount);
  for (int s = 0; s < 3; ++s) {
    for (int a = 0; a < 2; ++a) {
      CHECK(q1.values(s, a) - q0.values(s, a) == doctest::Approx(offset).epsilon(1e-7));
    }
  }
}

TEST_CASE("softmax_policy: eta = 0 is uniform everywhere") {
  std::mt19937 gen(41);
  Mdp mdp = testutil::random_mdp(gen, 3, 4, 2);
  QFunction q = mdp_vi(mdp, testutil::random_theta(gen, 2));
  StochasticPolicy pi = softmax_policy(q, 0.0);
  for (double p : pi.probs.data()) CHECK(p == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("softmax_policy: constant Q row is uniform for any eta") {
  QFunction q{Grid2(1, 3, 2.5)};
  for (double eta : {0.1, 1.0, 100.0}) {
    StochasticPolicy pi = softmax_policy(q, eta);
    for (int a = 0; a < 3; ++a) CHECK(pi.probs(0, a) == doctest::Approx(1.0 / 3).epsilon(1e-14));
  }
}

TEST_CASE("softmax_policy: huge eta collapses onto the greedy action") {
  QFunction q{Grid2(1, 2)};
  q.values(0, 0) = 0.51;
  q.values(0, 1) = 0.50;  // gap 0.01
  StochasticPolicy pi = softmax_policy(q, 1e6);
  double tv = 0.5 * (std::abs(pi.probs(0, 0) - 1.0) + std::abs(pi.probs(0, 1) - 0.0));
  CHECK(tv < 1e-6);
}

TEST_CASE("softmax_policy: rows sum to one and keep the argmax") {
  std::mt19937 gen(59);
  for (int rep = 0; rep < 10; ++rep) {
    Mdp mdp = testutil::random_mdp(gen, 4, 3, 3);
    QFunction q = mdp_vi(mdp, testutil::random_theta(gen, 3));
    StochasticPolicy pi = softmax_policy(q, 3.0);
    for (int s = 0; s < 4; ++s) {
      double sum = 0.0;
      for (int a = 0; a < 3; ++a) sum += pi.probs(s, a);
      CHECK(std::abs(sum - 1.0) < 1e-12);

      int q_arg = 0, p_arg = 0;
      for (int a = 1; a < 3; ++a) {
        if (q.values(s, a) > q.values(s, q_arg)) q_arg = a;
        if (pi.probs(s, a) > pi.probs(s, p_arg)) p_arg = a;
      }
      CHECK(q_arg == p_arg);
    }
  }
}

TEST_CASE("softmax_policy: scaling Q by k and eta by 1/k changes nothing") {
  std::mt19937 gen(61);
  Mdp mdp = testutil::random_mdp(gen, 3, 3, 2);
  QFunction q = mdp_vi(mdp, testutil::random_theta(gen, 2));
  const double k = 4.0, eta = 2.0;
  QFunction scaled = q;
  for (double& x : scaled.values.data()) x *= k;
  StochasticPolicy a = softmax_policy(q, eta);
  StochasticPolicy b = softmax_policy(scaled, eta / k);
  for (std::size_t i = 0; i < a.probs.data().size(); ++i) {
    CHECK(std::abs(a.probs.data()[i] - b.probs.data()[i]) < 1e-12);
  }
}

TEST_CASE("policy_value: zero reward evaluates to zero") {
  std::mt19937 gen(71);
  Mdp mdp = testutil::random_mdp(gen, 3, 2, 2);
  StochasticPolicy uniform{Grid2(3, 2, 0.5)};
  PolicyValue v = policy_value(mdp, RewardParams{{0.0, 0.0}}, uniform);
  for (double x : v.per_state) CHECK(x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(v.total == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("policy_value: single-state chain gives the geometric sum") {
  Mdp mdp = testutil::chain_mdp(0.9);
  StochasticPolicy pi{Grid2(1, 1, 1.0)};
  PolicyValue v = policy_value(mdp, RewardParams{{1.0}}, pi, 1e-9);
  CHECK(v.per_state[0] == doctest::Approx(10.0).epsilon(1e-8));
  CHECK(v.total == doctest::Approx(10.0).epsilon(1e-8));
}

TEST_CASE("policy_value: greedy policy recovers max_a Q within 2 tol") {
  std::mt19937 gen(83);
  const double tol = 1e-9;
  Mdp mdp = testutil::random_mdp(gen, 4, 3, 3);
  RewardParams theta = testutil::random_theta(gen, 3);
  QFunction q = mdp_vi(mdp, theta, tol);
  std::vector<int> actions = greedy_actions(q);
  StochasticPolicy greedy{Grid2(4, 3)};
  for (int s = 0; s < 4; ++s) greedy.probs(s, actions[s]) = 1.0;
  PolicyValue v = policy_value(mdp, theta, greedy, tol);
  for (int s = 0; s < 4; ++s) {
    double vq = q.values(s, 0);
    for (int a = 1; a < 3; ++a) vq = std::max(vq, q.values(s, a));
    CHECK(std::abs(v.per_state[s] - vq) <= 2 * tol + 1e-12);
  }
}

TEST_CASE("greedy value is at least any enumerated deterministic policy's") {
  std::mt19937 gen(97);
  for (int rep = 0; rep < 10; ++rep) {
    int ns = 2 + static_cast<int>(gen() % 3);
    int na = 2 + static_cast<int>(gen() % 2);
    Mdp mdp = testutil::random_mdp(gen, ns, na, 3);
    RewardParams theta = testutil::random_theta(gen, 3);
    QFunction q = mdp_vi(mdp, theta, 1e-9);
    std::vector<double> v_greedy = oracle::exact_policy_value(mdp, theta, greedy_actions(q));

    std::vector<int> actions(ns, 0);
    while (true) {
      std::vector<double> v = oracle::exact_policy_value(mdp, theta, actions);
      for (int s = 0; s < ns; ++s) CHECK(v_greedy[s] >= v[s] - 1e-6);
      int pos = 0;
      while (pos < ns && ++actions[pos] == na) {
        actions[pos] = 0;
        ++pos;
      }
      if (pos == ns) break;
    }
  }
}

TEST_CASE("Mdp::validate rejects broken inputs") {
  std::mt19937 gen(101);
  Mdp good = testutil::random_mdp(gen, 2, 2, 2);
  CHECK_NOTHROW(good.validate());

  Mdp bad = good;
  bad.transitions(0, 0, 0) += 0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = good;
  bad.discount = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = good;
  bad.initial_dist = {0.7, 0.7};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

}  // TEST_SUITE
