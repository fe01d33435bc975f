#include "curenet/generators.hpp"

#include <charconv>
#include <string>
#include <vector>

#include "curenet/errors.hpp"

namespace curenet {

namespace {

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t below(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(unit_draw(rng) * static_cast<double>(n)) % n;
}

void require_nodes(std::size_t n, std::size_t least, const char* what) {
  if (n < least) {
    throw DomainError(std::string(what) + " needs at least " + std::to_string(least) + " nodes");
  }
}

}  // namespace

WeightedGraph path_graph(std::size_t n, const Rational& w) {
  require_nodes(n, 1, "path");
  WeightedGraph g(n);
  for (NodeId v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1, w);
  return g;
}

WeightedGraph cycle_graph(std::size_t n, const Rational& w) {
  require_nodes(n, 3, "cycle");
  WeightedGraph g = path_graph(n, w);
  g.add_edge(0, static_cast<NodeId>(n - 1), w);
  return g;
}

WeightedGraph star_graph(std::size_t n, const Rational& w) {
  require_nodes(n, 1, "star");
  WeightedGraph g(n);
  for (NodeId v = 1; v < n; ++v) g.add_edge(0, v, w);
  return g;
}

WeightedGraph complete_graph(std::size_t n, const Rational& w) {
  require_nodes(n, 1, "complete graph");
  WeightedGraph g(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) g.add_edge(u, v, w);
  }
  return g;
}

WeightedGraph erdos_renyi(std::size_t n, double p, std::uint64_t seed, const Rational& w) {
  require_nodes(n, 1, "G(n, p)");
  if (!(p >= 0 && p <= 1)) throw DomainError("edge probability outside [0, 1]");
  std::mt19937_64 rng(seed);
  WeightedGraph g(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (unit_draw(rng) < p) g.add_edge(u, v, w);
    }
  }
  return g;
}

WeightedGraph generate_graph(std::string_view spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto colon = spec.find(':', start);
    parts.emplace_back(spec.substr(start, colon == std::string_view::npos ? spec.npos : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  auto bad = [&](const std::string& why) {
    return DomainError("bad generator '" + std::string(spec) + "': " + why);
  };
  auto count = [&](const std::string& s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw bad("'" + s + "' is not a count");
    if (v == 0 || v > 100000) throw bad("node count out of range");
    return v;
  };
  const std::string& kind = parts[0];
  if (kind == "er") {
    if (parts.size() != 4 && parts.size() != 5) throw bad("expected er:N:P:SEED[:W]");
    double p = 0;
    try {
      std::size_t used = 0;
      p = std::stod(parts[2], &used);
      if (used != parts[2].size()) throw bad("bad probability");
    } catch (const std::logic_error&) {
      throw bad("bad probability");
    }
    std::uint64_t seed = 0;
    auto [ptr, ec] = std::from_chars(parts[3].data(), parts[3].data() + parts[3].size(), seed);
    if (ec != std::errc() || ptr != parts[3].data() + parts[3].size()) throw bad("bad seed");
    Rational w = parts.size() == 5 ? parse_rational(parts[4]) : Rational(1);
    return erdos_renyi(count(parts[1]), p, seed, w);
  }
  if (parts.size() != 2 && parts.size() != 3) throw bad("expected KIND:N[:W]");
  std::size_t n = count(parts[1]);
  Rational w = parts.size() == 3 ? parse_rational(parts[2]) : Rational(1);
  if (kind == "path") return path_graph(n, w);
  if (kind == "cycle") return cycle_graph(n, w);
  if (kind == "star") return star_graph(n, w);
  if (kind == "complete") return complete_graph(n, w);
  throw bad("unknown kind '" + kind + "'");
}

WeightedGraph random_connected_graph(std::size_t n, double density,
                                     std::span<const Rational> weights, std::mt19937_64& rng) {
  require_nodes(n, 1, "random graph");
  if (weights.empty()) throw DomainError("no weights to draw from");
  WeightedGraph g(n);
  auto weight = [&] { return weights[below(rng, weights.size())]; };
  for (NodeId v = 1; v < n; ++v) g.add_edge(static_cast<NodeId>(below(rng, v)), v, weight());
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (g.find_edge(u, v)) continue;
      if (unit_draw(rng) < density) g.add_edge(u, v, weight());
    }
  }
  return g;
}

bool is_connected(const WeightedGraph& g) {
  if (g.node_count() == 0) return true;
  std::vector<char> seen(g.node_count(), 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (const auto& inc : g.neighbors(v)) {
      if (!seen[inc.neighbor]) {
        seen[inc.neighbor] = 1;
        ++reached;
        stack.push_back(inc.neighbor);
      }
    }
  }
  return reached == g.node_count();
}

}  // namespace curenet
