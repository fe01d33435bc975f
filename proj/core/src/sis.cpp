#include "curenet/sis.hpp"

#include <cmath>

#include "curenet/errors.hpp"

namespace curenet {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Infection: return "infection";
    case EventKind::Cure: return "cure";
    case EventKind::SegmentStart: return "segment-start";
    case EventKind::WaitingStart: return "waiting-start";
    case EventKind::DesignApplied: return "design-applied";
  }
  return "unknown";
}

SisState::SisState(const WeightedGraph& g, const Bag& infected, std::uint64_t seed)
    : graph_(g), infected_(g.node_count(), 0), rng_(seed) {
  for (NodeId v : infected) {
    g.check_node(v);
    infected_[v] = 1;
  }
  count_ = infected.size();
  set_graph(g);
}

void SisState::set_graph(const WeightedGraph& g) {
  if (g.node_count() != infected_.size()) {
    throw DomainError("replacement contact graph has a different node count");
  }
  graph_ = g;
  weight_ = graph_.weights_as_double();
  pressure_.assign(graph_.node_count(), 0.0);
  infected_neighbors_.assign(graph_.node_count(), 0);
  cut_ = 0;
  for (std::size_t e = 0; e < graph_.edge_count(); ++e) {
    const Edge& edge = graph_.edge(e);
    if (infected_[edge.u] != infected_[edge.v]) cut_ += edge.w;
    if (edge.w == 0) continue;
    if (infected_[edge.u]) {
      pressure_[edge.v] += weight_[e];
      ++infected_neighbors_[edge.v];
    }
    if (infected_[edge.v]) {
      pressure_[edge.u] += weight_[e];
      ++infected_neighbors_[edge.u];
    }
  }
}

Bag SisState::infected_bag() const {
  std::vector<NodeId> members;
  members.reserve(count_);
  for (NodeId v = 0; v < infected_.size(); ++v) {
    if (infected_[v]) members.push_back(v);
  }
  return Bag(std::move(members));
}

double SisState::infection_rate() const {
  double total = 0;
  for (NodeId v = 0; v < infected_.size(); ++v) {
    if (!infected_[v] && infected_neighbors_[v] > 0) total += pressure_[v];
  }
  return total;
}

double SisState::uniform() {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

void SisState::infect(NodeId v) {
  infected_[v] = 1;
  ++count_;
  for (const auto& inc : graph_.neighbors(v)) {
    const Rational& w = graph_.edge(inc.edge).w;
    if (infected_[inc.neighbor]) {
      cut_ -= w;
    } else {
      cut_ += w;
    }
    if (w == 0) continue;
    pressure_[inc.neighbor] += weight_[inc.edge];
    ++infected_neighbors_[inc.neighbor];
  }
}

void SisState::cure(NodeId v) {
  infected_[v] = 0;
  --count_;
  for (const auto& inc : graph_.neighbors(v)) {
    const Rational& w = graph_.edge(inc.edge).w;
    if (infected_[inc.neighbor]) {
      cut_ += w;
    } else {
      cut_ -= w;
    }
    if (w == 0) continue;
    if (--infected_neighbors_[inc.neighbor] == 0) {
      pressure_[inc.neighbor] = 0.0;
    } else {
      pressure_[inc.neighbor] -= weight_[inc.edge];
    }
  }
}

Transition SisState::step(std::span<const CureRate> cures) {
  if (count_ == 0) throw ContractError("step called on an extinct state");
  double cure_total = 0;
  for (const auto& c : cures) {
    if (c.node >= infected_.size() || !infected_[c.node]) {
      throw ContractError("cure rate allocated to a susceptible node");
    }
    if (!(c.rate >= 0)) throw ContractError("negative cure rate");
    cure_total += c.rate;
  }
  const double infection_total = infection_rate();
  const double total = infection_total + cure_total;
  if (!(total > 0)) {
    throw StalledState("total transition rate is zero with " + std::to_string(count_) +
                       " infected nodes");
  }

  const double u = uniform();
  clock_ += -std::log1p(-u) / total;

  double target = uniform() * total;
  std::optional<Transition> chosen;
  std::optional<Transition> last;
  for (NodeId v = 0; v < infected_.size() && !chosen; ++v) {
    if (infected_[v] || infected_neighbors_[v] == 0) continue;
    last = Transition{clock_, EventKind::Infection, v};
    if (target < pressure_[v]) chosen = last;
    target -= pressure_[v];
  }
  for (std::size_t i = 0; i < cures.size() && !chosen; ++i) {
    if (cures[i].rate <= 0) continue;
    last = Transition{clock_, EventKind::Cure, cures[i].node};
    if (target < cures[i].rate) chosen = last;
    target -= cures[i].rate;
  }
  // Rounding can leave a sliver of mass past the last candidate.
  Transition t = chosen ? *chosen : *last;
  if (t.kind == EventKind::Infection) {
    infect(t.node);
  } else {
    cure(t.node);
  }
  return t;
}

}  // namespace curenet
