#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "curenet/fairness.hpp"
#include "curenet/graph.hpp"

namespace curenet::cli {

/// Fixed-precision rendering so repeated runs print identical bytes.
std::string fmt(double value);

/// A graph file path, or "gen:SPEC" for a built-in generator.
WeightedGraph load_graph(const std::string& arg);

/// "all", "none", or a file of node ids.
Bag load_bag(const std::string& arg, std::size_t node_count);

/// Whitespace- or comma-separated group indices.
std::vector<GroupId> parse_group_list(std::string_view text, std::size_t node_count);

/// Comma-separated positive integers ("2,4,8"); empty text gives an empty list.
std::vector<std::size_t> parse_index_list(std::string_view text);

/// Writes `text` to `path`, creating parent directories. Throws IoError.
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace curenet::cli
