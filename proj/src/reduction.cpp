#include "infmax/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "infmax/errors.hpp"

namespace infmax {

Gadget build_gadget(const IsingModel& model, Vertex v, int k, double x) {
  if (!model.contains(v)) throw ValidationError("target vertex " + std::to_string(v) + " not in model");
  if (k < 1) throw DomainError("budget k must be at least 1");
  if (!std::isfinite(x)) throw DomainError("gadget field must be finite");

  const auto n = static_cast<Vertex>(model.size());
  std::vector<double> fields(model.fields().begin(), model.fields().end());
  fields.resize(model.size() + static_cast<std::size_t>(k), x);
  std::vector<Edge> edges(model.edges().begin(), model.edges().end());

  std::vector<double> a(fields.size(), 0.0);
  a[static_cast<std::size_t>(v)] = 1.0;
  std::vector<Vertex> us;
  for (int i = 0; i < k; ++i) {
    a[static_cast<std::size_t>(n + i)] = 1.0;
    us.push_back(n + i);
  }
  std::vector<Vertex> ws(us.begin(), us.end() - 1);
  ws.push_back(v);

  Gadget g{IsingModel(std::move(fields), std::move(edges)), WeightVector(std::move(a)), x, v, k,
           VertexSet(std::move(us)), VertexSet(std::move(ws))};
  return g;
}

Direction classify_optimum(const Gadget& gadget, const Solution& solution, double epsilon) {
  if (!(epsilon >= 0.0)) throw DomainError("epsilon must be nonnegative");
  if (solution.assignment.support() != solution.vertices)
    throw ValidationError("solution assignment does not cover exactly its vertex set");
  if (solution.vertices.size() > static_cast<std::size_t>(gadget.k))
    throw ValidationError("solution exceeds the budget k=" + std::to_string(gadget.k));
  for (Vertex s : solution.vertices) {
    if (!gadget.augmented.contains(s))
      throw ValidationError("solution vertex " + std::to_string(s) + " not in the gadget");
  }
  return solution.vertices == gadget.u ? Direction::at_least : Direction::at_most;
}

int max_probes(double tolerance) {
  return static_cast<int>(std::ceil(std::log2(2.0 / tolerance)));
}

MarginalEstimate estimate_marginal(const IsingModel& model, Vertex v, int k,
                                   const InfMaxSolver& solver, double epsilon, double tolerance) {
  if (!(tolerance > 0.0) || !(tolerance < 1.0)) throw DomainError("tolerance must lie in (0, 1)");
  if (!(epsilon >= 0.0)) throw DomainError("epsilon must be nonnegative");
  constexpr double kClamp = 1.0 - 1e-9;

  MarginalEstimate out;
  const int cap = max_probes(tolerance);
  while (out.hi - out.lo > 2.0 * tolerance) {
    if (static_cast<int>(out.probes.size()) >= cap) {
      std::string trace;
      for (const auto& p : out.probes)
        trace += " " + std::to_string(p.t) + (p.direction == Direction::at_least ? ":GE" : ":LE");
      throw ConvergenceError("marginal search did not converge; probes:" + trace);
    }
    const double t = std::clamp(0.5 * (out.lo + out.hi), -kClamp, kClamp);
    const auto gadget = build_gadget(model, v, k, std::atanh(t));
    const auto dir = classify_optimum(gadget, solver(gadget.augmented, gadget.weights, k), epsilon);
    out.probes.push_back({t, dir});
    if (dir == Direction::at_least) out.lo = t; else out.hi = t;
  }
  out.magnetization = 0.5 * (out.lo + out.hi);
  return out;
}

bool probes_consistent(const std::vector<Probe>& probes, double epsilon) {
  for (const auto& ge : probes) {
    if (ge.direction != Direction::at_least) continue;
    for (const auto& le : probes) {
      if (le.direction == Direction::at_most && ge.t - epsilon > le.t + epsilon) return false;
    }
  }
  return true;
}

} // namespace infmax
