#include "pcgraph/modelio.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace pcgraph {

namespace {

using nlohmann::json;

Matrix matrix_from_json(const json& j, int rows, int cols, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    throw ParseError(std::string(what) + ": expected " + std::to_string(rows) +
                     " rows");
  }
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw ParseError(std::string(what) + ": expected " +
                       std::to_string(cols) + " columns per row");
    }
    for (int c = 0; c < cols; ++c) {
      if (!row[c].is_number()) {
        throw ParseError(std::string(what) + ": non-numeric entry");
      }
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

void snap_small_entries(Matrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (std::abs(m(r, c)) <= kInputSnapTol) m(r, c) = 0.0;
    }
  }
}

json edge_list(const std::set<std::pair<int, int>>& edges) {
  json out = json::array();
  for (const auto& [a, b] : edges) out.push_back(json::array({a, b}));
  return out;
}

void read_edges(const json& j, const char* key,
                const std::function<void(int, int)>& add) {
  if (!j.contains(key)) return;
  const json& list = j.at(key);
  if (!list.is_array()) throw ParseError(std::string("graph: ") + key + " must be an array");
  for (const json& e : list) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      throw ParseError(std::string("graph: ") + key +
                       " entries must be [a, b] vertex pairs");
    }
    try {
      add(e[0].get<int>(), e[1].get<int>());
    } catch (const std::invalid_argument& err) {
      throw ParseError(std::string("graph: ") + err.what());
    }
  }
}

}  // namespace

MCARModel model_from_json(const json& j) {
  bool snap = true;
  if (j.contains("snap_zeros")) {
    if (!j.at("snap_zeros").is_boolean()) {
      throw ParseError("model: snap_zeros must be a boolean");
    }
    snap = j.at("snap_zeros").get<bool>();
  }
  return model_from_json(j, snap);
}

MCARModel model_from_json(const json& j, bool snap_zeros) {
  if (!j.is_object()) throw ParseError("model: expected a JSON object");
  for (const char* key : {"k", "p", "A", "Sigma_L"}) {
    if (!j.contains(key)) {
      throw ParseError(std::string("model: missing field '") + key + "'");
    }
  }
  if (!j.at("k").is_number_integer() || !j.at("p").is_number_integer()) {
    throw ParseError("model: k and p must be integers");
  }
  const int k = j.at("k").get<int>();
  const int p = j.at("p").get<int>();
  if (k < 1 || p < 1) throw ParseError("model: k and p must be positive");

  const json& a_list = j.at("A");
  if (!a_list.is_array() || static_cast<int>(a_list.size()) != p) {
    throw ParseError("model: A must hold p coefficient matrices");
  }
  std::vector<Matrix> ar;
  ar.reserve(p);
  for (int m = 0; m < p; ++m) {
    ar.push_back(matrix_from_json(a_list[m], k, k, "model: A"));
    if (snap_zeros) snap_small_entries(ar.back());
  }
  Matrix sigma = matrix_from_json(j.at("Sigma_L"), k, k, "model: Sigma_L");
  if (snap_zeros) snap_small_entries(sigma);
  return MCARModel(std::move(ar), std::move(sigma));
}

json model_to_json(const MCARModel& model) {
  json out;
  out["k"] = model.dim();
  out["p"] = model.order();
  json a_list = json::array();
  for (const Matrix& a : model.ar_coefficients()) a_list.push_back(matrix_to_json(a));
  out["A"] = std::move(a_list);
  out["Sigma_L"] = matrix_to_json(model.sigma_l());
  return out;
}

MCARModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("model file " + path + ": " + e.what());
  }
  return model_from_json(j);
}

json graph_to_json(const UndirectedGraph& g) {
  json out;
  out["n"] = g.n_vertices();
  out["undirected"] = edge_list(g.edges());
  out["directed"] = json::array();
  out["dashed"] = json::array();
  return out;
}

json graph_to_json(const MixedGraph& g) {
  json out;
  out["n"] = g.n_vertices();
  out["undirected"] = json::array();
  out["directed"] = edge_list(g.directed());
  out["dashed"] = edge_list(g.dashed());
  return out;
}

UndirectedGraph undirected_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.at("n").is_number_integer()) {
    throw ParseError("graph: expected an object with integer field 'n'");
  }
  UndirectedGraph g(j.at("n").get<int>());
  read_edges(j, "undirected", [&](int a, int b) { g.add_edge(a, b); });
  if ((j.contains("directed") && !j.at("directed").empty()) ||
      (j.contains("dashed") && !j.at("dashed").empty())) {
    throw ParseError("graph: expected an undirected graph without directed or dashed edges");
  }
  return g;
}

MixedGraph mixed_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.at("n").is_number_integer()) {
    throw ParseError("graph: expected an object with integer field 'n'");
  }
  MixedGraph g(j.at("n").get<int>());
  read_edges(j, "directed", [&](int a, int b) { g.add_directed(a, b); });
  read_edges(j, "dashed", [&](int a, int b) { g.add_dashed(a, b); });
  if (j.contains("undirected") && !j.at("undirected").empty()) {
    throw ParseError("graph: mixed graphs carry directed and dashed edges only");
  }
  return g;
}

UndirectedGraph load_undirected_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("graph file " + path + ": " + e.what());
  }
  return undirected_from_json(j);
}

std::string to_dot(const UndirectedGraph& g, const std::string& name) {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (int v = 1; v <= g.n_vertices(); ++v) out << "  " << v << ";\n";
  for (const auto& [a, b] : g.edges()) {
    out << "  " << a << " -- " << b << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const MixedGraph& g, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (int v = 1; v <= g.n_vertices(); ++v) out << "  " << v << ";\n";
  for (const auto& [a, b] : g.directed()) {
    out << "  " << a << " -> " << b << ";\n";
  }
  for (const auto& [a, b] : g.dashed()) {
    out << "  " << a << " -- " << b << " [style=dashed];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace pcgraph
