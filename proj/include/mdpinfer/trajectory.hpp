#pragma once

#include <string>
#include <vector>

#include "mdpinfer/mdp.hpp"

namespace mdpinfer {

struct Step {
  int state = 0;
  int action = 0;
  friend bool operator==(const Step&, const Step&) = default;
};

/// One user's observed (state, action) sequence.
struct Trajectory {
  std::string user_id;
  std::vector<Step> steps;

  int length() const { return static_cast<int>(steps.size()); }
  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

struct TrajectoryDataset {
  std::vector<Trajectory> trajectories;

  std::size_t total_steps() const {
    std::size_t n = 0;
    for (const auto& t : trajectories) n += t.steps.size();
    return n;
  }

  /// Throws if any step indexes outside the MDP's state/action spaces.
  void validate_against(const Mdp& mdp) const;

  friend bool operator==(const TrajectoryDataset&, const TrajectoryDataset&) = default;
};

}  // namespace mdpinfer
