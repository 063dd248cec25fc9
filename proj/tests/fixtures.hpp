#pragma once

#include <vector>

#include "infmax/model.hpp"

namespace fixture {

using infmax::Edge;
using infmax::IsingModel;
using infmax::Vertex;

inline IsingModel path(int n, double beta = 0.3, double h = 0.0) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, beta});
  return IsingModel(std::vector<double>(static_cast<std::size_t>(n), h), std::move(edges));
}

inline IsingModel cycle(int n, double beta = 0.3, double h = 0.0) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n, beta});
  return IsingModel(std::vector<double>(static_cast<std::size_t>(n), h), std::move(edges));
}

inline IsingModel edgeless(std::vector<double> h) { return IsingModel(std::move(h), {}); }

inline IsingModel edgeless(int n, double h = 0.0) {
  return edgeless(std::vector<double>(static_cast<std::size_t>(n), h));
}

inline IsingModel triangle(double beta = 0.3) {
  return IsingModel({0.0, 0.0, 0.0}, {{0, 1, beta}, {1, 2, beta}, {0, 2, beta}});
}

inline std::vector<double> ones(std::size_t n) { return std::vector<double>(n, 1.0); }

} // namespace fixture
