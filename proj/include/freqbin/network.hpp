// Copyright 2026 The freqbin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Assignment of entangled frequency pairs to the links of a fully connected
// key-distribution network.

#ifndef FREQBIN_NETWORK_HPP
#define FREQBIN_NETWORK_HPP

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "freqbin/core_model.hpp"
#include "freqbin/errors.hpp"
#include "freqbin/qkd.hpp"

namespace freqbin {

struct NetworkLink {
  std::string a;
  std::string b;
  int n = 0;
  double sifted_bps = 0.0;
};

struct NetworkPlan {
  std::vector<std::string> users;
  std::vector<NetworkLink> links;
  std::vector<int> unused_pairs;
  int max_users = 1;
};

enum class AllocationPolicy {
  /// Best pair to the first link in lexicographic (a, b) order, and so on.
  Lexicographic,
  /// Greedy: each pair, best first, goes to the open link whose two users hold the
  /// least aggregate rate so far. Raises the worst-served user's total.
  BalancedUsers,
};

/// Secure pairs ordered by sifted rate (descending), ties by ascending n.
inline std::vector<LinkMetrics> usable_links(std::vector<LinkMetrics> metrics) {
  std::erase_if(metrics, [](const LinkMetrics& m) { return !m.secure; });
  std::sort(metrics.begin(), metrics.end(), [](const LinkMetrics& x, const LinkMetrics& y) {
    if (x.sifted_rate != y.sifted_rate) return x.sifted_rate > y.sifted_rate;
    return x.n < y.n;
  });
  return metrics;
}

inline std::vector<int> usable_pairs(const std::vector<LinkMetrics>& metrics) {
  std::vector<int> out;
  for (const auto& m : usable_links(metrics)) out.push_back(m.n);
  return out;
}

/// Largest N with N(N-1)/2 <= usable_count, at least 1.
inline int max_users(int usable_count) {
  if (usable_count < 0) throw ValidationError("max users: negative pair count");
  int n = 1;
  while ((n + 1) * n / 2 <= usable_count) ++n;
  return n;
}

inline std::string user_name(int i) { return "U" + std::to_string(i + 1); }

/// `usable` must already be ordered best first (see usable_links).
inline NetworkPlan allocate(const std::vector<LinkMetrics>& usable, int n_users,
                            AllocationPolicy policy = AllocationPolicy::Lexicographic) {
  if (n_users < 1) throw ValidationError("allocate: need at least one user");
  for (const auto& m : usable) {
    if (!m.secure) throw ValidationError("allocate: pair " + std::to_string(m.n) + " is not secure");
  }
  const int needed = n_users * (n_users - 1) / 2;
  const int available = static_cast<int>(usable.size());
  if (needed > available) {
    throw CapacityError("allocate: " + std::to_string(n_users) + " users need " + std::to_string(needed) +
                        " pairs but only " + std::to_string(available) + " are usable (short by " +
                        std::to_string(needed - available) + ")");
  }

  NetworkPlan plan;
  for (int i = 0; i < n_users; ++i) plan.users.push_back(user_name(i));
  plan.max_users = max_users(available);

  std::vector<std::pair<int, int>> link_order;
  for (int i = 0; i < n_users; ++i)
    for (int j = i + 1; j < n_users; ++j) link_order.emplace_back(i, j);

  if (policy == AllocationPolicy::Lexicographic) {
    for (std::size_t k = 0; k < link_order.size(); ++k) {
      const auto [i, j] = link_order[k];
      plan.links.push_back({plan.users[i], plan.users[j], usable[k].n, usable[k].sifted_rate});
    }
  } else {
    std::vector<double> user_rate(static_cast<std::size_t>(n_users), 0.0);
    std::vector<bool> taken(link_order.size(), false);
    std::vector<NetworkLink> assigned(link_order.size());
    for (std::size_t k = 0; k < link_order.size(); ++k) {
      std::size_t best = link_order.size();
      double best_load = 0.0;
      for (std::size_t l = 0; l < link_order.size(); ++l) {
        if (taken[l]) continue;
        const double load = user_rate[static_cast<std::size_t>(link_order[l].first)] +
                            user_rate[static_cast<std::size_t>(link_order[l].second)];
        if (best == link_order.size() || load < best_load) {
          best = l;
          best_load = load;
        }
      }
      taken[best] = true;
      const auto [i, j] = link_order[best];
      user_rate[static_cast<std::size_t>(i)] += usable[k].sifted_rate;
      user_rate[static_cast<std::size_t>(j)] += usable[k].sifted_rate;
      assigned[best] = {plan.users[i], plan.users[j], usable[k].n, usable[k].sifted_rate};
    }
    plan.links = std::move(assigned);
  }
  for (std::size_t k = link_order.size(); k < usable.size(); ++k) plan.unused_pairs.push_back(usable[k].n);
  return plan;
}

/// Checks the plan invariants: every unordered user pair linked exactly once and
/// no frequency pair reused.
inline bool plan_is_consistent(const NetworkPlan& plan) {
  std::set<std::pair<std::string, std::string>> seen_links;
  std::set<int> seen_pairs;
  for (const auto& l : plan.links) {
    auto key = std::minmax(l.a, l.b);
    if (l.a == l.b || !seen_links.insert({key.first, key.second}).second) return false;
    if (!seen_pairs.insert(l.n).second) return false;
  }
  for (int n : plan.unused_pairs) {
    if (!seen_pairs.insert(n).second) return false;
  }
  const std::size_t u = plan.users.size();
  return seen_links.size() == u * (u - 1) / 2;
}

/// Qubit-pair bases first, first + step, ... with step = 2 + guard_modes.
inline std::vector<int> pair_layout(int first, int count, int guard_modes) {
  std::vector<int> out;
  for (int k = 0; k < count; ++k) out.push_back(first + k * (2 + guard_modes));
  return out;
}

/// Every qubit block (n, n+1) must lie on the grid with at least `guard_modes`
/// unused modes to the next block.
inline void check_guard_feasibility(const FrequencyGrid& grid, std::vector<int> bases, int guard_modes) {
  std::sort(bases.begin(), bases.end());
  for (std::size_t k = 0; k < bases.size(); ++k) {
    if (!grid.contains(bases[k]) || !grid.contains(bases[k] + 1)) {
      throw LayoutError("pair layout: block at " + std::to_string(bases[k]) + " leaves the grid");
    }
    if (k > 0 && bases[k] - bases[k - 1] - 2 < guard_modes) {
      throw LayoutError("pair layout: blocks at " + std::to_string(bases[k - 1]) + " and " +
                        std::to_string(bases[k]) + " are closer than " + std::to_string(guard_modes) +
                        " guard modes");
    }
  }
}

}  // namespace freqbin

#endif  // FREQBIN_NETWORK_HPP
