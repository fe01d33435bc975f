#include "cli/common.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "curenet/errors.hpp"
#include "curenet/generators.hpp"
#include "curenet/io.hpp"

namespace curenet::cli {

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

WeightedGraph load_graph(const std::string& arg) {
  if (arg.rfind("gen:", 0) == 0) return generate_graph(std::string_view(arg).substr(4));
  return read_graph_file(arg);
}

Bag load_bag(const std::string& arg, std::size_t node_count) {
  if (arg == "all") return Bag::all(node_count);
  if (arg == "none") return Bag{};
  return read_bag_file(arg, node_count);
}

std::vector<GroupId> parse_group_list(std::string_view text, std::size_t node_count) {
  std::string copy(text);
  for (char& c : copy) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(copy);
  return read_groups(in, node_count);
}

std::vector<std::size_t> parse_index_list(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    std::size_t value = 0;
    if (piece.empty()) throw DomainError("empty entry in index list '" + std::string(text) + "'");
    for (char c : piece) {
      if (c < '0' || c > '9') throw DomainError("bad index '" + std::string(piece) + "'");
      value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create '" + path.parent_path().string() + "': " + ec.message());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace curenet::cli
