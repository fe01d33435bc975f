#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "curenet/fairness.hpp"
#include "curenet/graph.hpp"
#include "curenet/netdesign.hpp"

namespace curenet {

/// Header "n m", then m lines "u v w". Blank lines and '#' comments are
/// skipped. Throws ParseError with the offending line and column.
WeightedGraph read_graph(std::istream& in);
WeightedGraph read_graph_file(const std::filesystem::path& path);

/// Weights are written exactly ("0.25", or "1/3" when no finite decimal exists).
void write_graph(std::ostream& out, const WeightedGraph& g);

/// n group indices separated by whitespace.
std::vector<GroupId> read_groups(std::istream& in, std::size_t node_count);
std::vector<GroupId> read_groups_file(const std::filesystem::path& path,
                                      std::size_t node_count);

/// Whitespace-separated node ids, or the single word "all".
Bag read_bag(std::istream& in, std::size_t node_count);
Bag read_bag_file(const std::filesystem::path& path, std::size_t node_count);

/// step,removed,bag_size,cut with one row per bag p_0..p_k (removed empty for p_0).
void write_crusade_csv(std::ostream& out, const WeightedGraph& g, const Crusade& p);

/// u,v,w,delta per edge.
void write_plan_csv(std::ostream& out, const WeightedGraph& g, const ReductionPlan& plan);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace curenet
