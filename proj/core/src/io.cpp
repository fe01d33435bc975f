#include "curenet/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "curenet/errors.hpp"

namespace curenet {

namespace {

struct Token {
  std::string text;
  std::size_t line;
  std::size_t column;
};

// Splits the stream into tokens, dropping '#' comments.
std::vector<std::vector<Token>> tokenize_lines(std::istream& in) {
  std::vector<std::vector<Token>> lines;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i >= raw.size()) break;
      std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      tokens.push_back({raw.substr(start, i - start), number, start + 1});
    }
    if (!tokens.empty()) lines.push_back(std::move(tokens));
  }
  return lines;
}

std::uint64_t parse_count(const Token& t, const char* what) {
  std::uint64_t value = 0;
  if (t.text.empty() || t.text.size() > 12) throw ParseError(std::string("bad ") + what, t.line, t.column);
  for (char c : t.text) {
    if (c < '0' || c > '9') throw ParseError(std::string("bad ") + what + " '" + t.text + "'", t.line, t.column);
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

WeightedGraph read_graph(std::istream& in) {
  auto lines = tokenize_lines(in);
  if (lines.empty()) throw ParseError("missing 'n m' header", 1, 1);
  const auto& header = lines[0];
  if (header.size() != 2) {
    throw ParseError("header must be 'n m'", header[0].line, header[0].column);
  }
  auto n = parse_count(header[0], "node count");
  auto m = parse_count(header[1], "edge count");
  if (n == 0) throw ParseError("node count must be positive", header[0].line, header[0].column);
  if (lines.size() - 1 != m) {
    const Token& at = lines.size() > m + 1 ? lines[m + 1][0] : lines.back().back();
    throw ParseError("expected " + std::to_string(m) + " edge lines, found " +
                         std::to_string(lines.size() - 1),
                     at.line, at.column);
  }
  WeightedGraph g(n);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& row = lines[i];
    if (row.size() != 3) throw ParseError("edge line must be 'u v w'", row[0].line, row[0].column);
    auto u = parse_count(row[0], "node id");
    auto v = parse_count(row[1], "node id");
    Rational w;
    try {
      w = parse_rational(row[2].text);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), row[2].line, row[2].column);
    }
    if (w < 0 || w > 1) throw ParseError("weight outside [0, 1]", row[2].line, row[2].column);
    try {
      if (u >= n || v >= n) throw DomainError("node id out of range");
      g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), std::move(w));
    } catch (const DomainError& e) {
      throw ParseError(e.what(), row[0].line, row[0].column);
    }
  }
  return g;
}

WeightedGraph read_graph_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << to_string(e.w) << '\n';
}

std::vector<GroupId> read_groups(std::istream& in, std::size_t node_count) {
  std::vector<GroupId> groups;
  for (const auto& line : tokenize_lines(in)) {
    for (const auto& t : line) groups.push_back(static_cast<GroupId>(parse_count(t, "group index")));
  }
  if (groups.size() != node_count) {
    throw ParseError("expected " + std::to_string(node_count) + " group indices, found " +
                         std::to_string(groups.size()),
                     1, 1);
  }
  return groups;
}

std::vector<GroupId> read_groups_file(const std::filesystem::path& path, std::size_t node_count) {
  auto in = open_input(path);
  return read_groups(in, node_count);
}

Bag read_bag(std::istream& in, std::size_t node_count) {
  auto lines = tokenize_lines(in);
  if (lines.size() == 1 && lines[0].size() == 1 && lines[0][0].text == "all") {
    return Bag::all(node_count);
  }
  std::vector<NodeId> members;
  for (const auto& line : lines) {
    for (const auto& t : line) {
      auto v = parse_count(t, "node id");
      if (v >= node_count) throw ParseError("node id out of range", t.line, t.column);
      members.push_back(static_cast<NodeId>(v));
    }
  }
  return Bag(std::move(members));
}

Bag read_bag_file(const std::filesystem::path& path, std::size_t node_count) {
  auto in = open_input(path);
  return read_bag(in, node_count);
}

void write_crusade_csv(std::ostream& out, const WeightedGraph& g, const Crusade& p) {
  auto profile = crusade_cut_profile(g, p);
  out << "step,removed,bag_size,cut\n";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out << i << ',';
    if (i > 0) out << p.removal_order()[i - 1];
    out << ',' << p.start().size() - i << ',' << to_string(profile[i]) << '\n';
  }
}

void write_plan_csv(std::ostream& out, const WeightedGraph& g, const ReductionPlan& plan) {
  out << "u,v,w,delta\n";
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    out << edge.u << ',' << edge.v << ',' << to_string(edge.w) << ','
        << to_string(plan.deltas.at(e)) << '\n';
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace curenet
