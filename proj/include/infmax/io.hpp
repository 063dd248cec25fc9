#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "infmax/model.hpp"

namespace infmax {

// A model together with the vertex weights stored alongside it in model files.
struct Instance {
  IsingModel model;
  WeightVector weights;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Model file: {"vertices": [{"id", "h", "a"?}], "edges": [{"u", "v", "beta"}]}.
// Ids must be exactly 0..n-1 with n >= 1. Duplicate ids, duplicate edges (either
// orientation) and self-loops raise ValidationError naming the element.
Instance parse_instance(std::string_view text);
Instance read_instance(const std::filesystem::path& path);

// Canonical text: vertices by id, edges in (min, max) order, shortest round-trip doubles.
std::string serialize_instance(const Instance& instance);
void write_instance(const std::filesystem::path& path, const Instance& instance);

} // namespace infmax
