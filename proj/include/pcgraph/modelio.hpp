#ifndef PCGRAPH_MODELIO_HPP
#define PCGRAPH_MODELIO_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "pcgraph/graphs.hpp"
#include "pcgraph/mcar.hpp"

namespace pcgraph {

// Model spec schema:
//   {"k": int, "p": int, "A": [p k-by-k matrices], "Sigma_L": k-by-k,
//    "snap_zeros": bool (optional, default true)}
// Matrices are row-major nested arrays. With snapping enabled, entries of
// magnitude <= 1e-12 are treated as exact structural zeros.
MCARModel model_from_json(const nlohmann::json& j);
MCARModel model_from_json(const nlohmann::json& j, bool snap_zeros);
nlohmann::json model_to_json(const MCARModel& model);
MCARModel load_model(const std::string& path);

// Graph schema: {"n": int, "undirected": [[a,b],...], "directed": [[a,b],...],
// "dashed": [[a,b],...]} with 1-based vertices; absent edge classes read as
// empty.
nlohmann::json graph_to_json(const UndirectedGraph& g);
nlohmann::json graph_to_json(const MixedGraph& g);
UndirectedGraph undirected_from_json(const nlohmann::json& j);
MixedGraph mixed_from_json(const nlohmann::json& j);
UndirectedGraph load_undirected_graph(const std::string& path);

// DOT: "a -- b" for undirected edges; mixed graphs use "a -> b" and
// "a -- b [style=dashed]".
std::string to_dot(const UndirectedGraph& g, const std::string& name = "pc");
std::string to_dot(const MixedGraph& g, const std::string& name = "gc");

inline constexpr double kInputSnapTol = 1e-12;

}  // namespace pcgraph

#endif
