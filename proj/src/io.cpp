#include "infmax/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "infmax/errors.hpp"

namespace infmax {

namespace {

using nlohmann::json;

double number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ValidationError(where + ": missing \"" + key + "\"");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ValidationError(where + ": \"" + key + "\" must be a number");
  return v.get<double>();
}

long long integer(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ValidationError(where + ": missing \"" + key + "\"");
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ValidationError(where + ": \"" + key + "\" must be an integer");
  return v.get<long long>();
}

} // namespace

Instance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("model file must be a JSON object");
  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    throw ValidationError("model file needs a \"vertices\" array");
  const auto& vertices = doc["vertices"];
  if (vertices.empty()) throw ValidationError("model must have at least one vertex");

  const auto n = vertices.size();
  std::vector<double> h(n, 0.0);
  std::vector<double> a(n, 0.0);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string where = "vertices[" + std::to_string(i) + "]";
    const auto& entry = vertices[i];
    if (!entry.is_object()) throw ValidationError(where + " must be an object");
    const auto id = integer(entry, "id", where);
    if (id < 0 || static_cast<std::size_t>(id) >= n)
      throw ValidationError(where + ": id " + std::to_string(id) + " outside [0, " +
                            std::to_string(n) + ")");
    const auto idx = static_cast<std::size_t>(id);
    if (seen[idx]) throw ValidationError(where + ": duplicate vertex id " + std::to_string(id));
    seen[idx] = true;
    h[idx] = number(entry, "h", where);
    if (entry.contains("a")) a[idx] = number(entry, "a", where);
  }

  std::vector<Edge> edges;
  if (doc.contains("edges")) {
    const auto& list = doc["edges"];
    if (!list.is_array()) throw ValidationError("\"edges\" must be an array");
    std::map<std::pair<Vertex, Vertex>, std::size_t> first_seen;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "edges[" + std::to_string(i) + "]";
      const auto& entry = list[i];
      if (!entry.is_object()) throw ValidationError(where + " must be an object");
      const auto u = integer(entry, "u", where);
      const auto v = integer(entry, "v", where);
      const double beta = number(entry, "beta", where);
      const std::string label = where + " (" + std::to_string(u) + "," + std::to_string(v) + ")";
      if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
        throw ValidationError(label + ": unknown vertex");
      if (u == v) throw ValidationError(label + ": self-loop");
      const std::pair<Vertex, Vertex> key{static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v))};
      auto [it, fresh] = first_seen.emplace(key, i);
      if (!fresh)
        throw ValidationError(label + ": duplicate of edges[" + std::to_string(it->second) + "]");
      edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), beta});
    }
  }
  return Instance{IsingModel(std::move(h), std::move(edges)), WeightVector(std::move(a))};
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read model file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

std::string serialize_instance(const Instance& instance) {
  const auto& m = instance.model;
  if (instance.weights.size() != m.size())
    throw ValidationError("weight vector does not match the model size");
  nlohmann::ordered_json doc;
  auto vertices = nlohmann::ordered_json::array();
  for (std::size_t v = 0; v < m.size(); ++v) {
    nlohmann::ordered_json entry;
    entry["id"] = v;
    entry["h"] = m.field(static_cast<Vertex>(v));
    entry["a"] = instance.weights[static_cast<Vertex>(v)];
    vertices.push_back(std::move(entry));
  }
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : m.edges()) {
    nlohmann::ordered_json entry;
    entry["u"] = e.u;
    entry["v"] = e.v;
    entry["beta"] = e.beta;
    edges.push_back(std::move(entry));
  }
  doc["vertices"] = std::move(vertices);
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

void write_instance(const std::filesystem::path& path, const Instance& instance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write model file " + path.string());
  out << serialize_instance(instance);
}

} // namespace infmax
