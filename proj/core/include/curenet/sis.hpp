#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "curenet/graph.hpp"

namespace curenet {

enum class EventKind { Infection, Cure, SegmentStart, WaitingStart, DesignApplied };

std::string_view to_string(EventKind kind);

struct CureRate {
  NodeId node;
  double rate;
};

struct Transition {
  double time;  ///< clock after the transition
  EventKind kind;
  NodeId node;
};

/// Infected set of the SIS chain on a contact graph, with the exact cut c(I)
/// maintained incrementally. The contact graph may be swapped (network design)
/// without touching the infected set.
class SisState {
 public:
  SisState(const WeightedGraph& g, const Bag& infected, std::uint64_t seed);

  /// Replaces the contact graph (same node set).
  void set_graph(const WeightedGraph& g);
  const WeightedGraph& graph() const noexcept { return graph_; }

  bool is_infected(NodeId v) const { return infected_[v] != 0; }
  std::size_t infected_count() const noexcept { return count_; }
  Bag infected_bag() const;
  double clock() const noexcept { return clock_; }

  /// c(I(t)) in the current graph, exact.
  const Rational& cut() const noexcept { return cut_; }
  /// Sum of infection rates of susceptible nodes (equals c(I(t)) in floating point).
  double infection_rate() const;

  /// One Gillespie transition: holding time Exp(R) with R = infection rate +
  /// total cure rate, event drawn proportionally (susceptible nodes by id, then
  /// cures in the given order). Throws StalledState when R = 0 and ContractError
  /// on a cure directed at a susceptible node.
  Transition step(std::span<const CureRate> cures);

 private:
  double uniform();
  void infect(NodeId v);
  void cure(NodeId v);

  WeightedGraph graph_;
  std::vector<double> weight_;  // per edge, as double
  std::vector<char> infected_;
  std::vector<double> pressure_;
  std::vector<std::uint32_t> infected_neighbors_;  // with positive weight
  std::size_t count_ = 0;
  Rational cut_;
  double clock_ = 0.0;
  std::mt19937_64 rng_;
};

}  // namespace curenet
