#pragma once

#include <functional>
#include <vector>

#include "infmax/model.hpp"
#include "infmax/solver.hpp"

namespace infmax {

// G plus k isolated vertices u_1..u_k (ids n..n+k-1) with common field x. Weight 1 on
// the target v and on every u_i, 0 elsewhere.
struct Gadget {
  IsingModel augmented;
  WeightVector weights;
  double x = 0.0;
  Vertex target = 0;
  int k = 1;
  VertexSet u;   // {u_1..u_k}
  VertexSet w;   // {v, u_1..u_{k-1}}
};

Gadget build_gadget(const IsingModel& model, Vertex v, int k, double x);

// Which side of tanh(x) the target's magnetization lies on, up to epsilon.
enum class Direction {
  at_least, // S_hat == U: E[X_v] >= tanh x - eps
  at_most,  // S_hat != U: E[X_v] <= tanh x + eps
};

// Throws ValidationError when the solution is not a feasible answer on the gadget.
Direction classify_optimum(const Gadget& gadget, const Solution& solution, double epsilon);

// Any k-Inf-Max solver: (model, weights, k) -> epsilon-optimal solution.
using InfMaxSolver = std::function<Solution(const IsingModel&, const WeightVector&, int)>;

struct Probe {
  double t = 0.0; // tanh x
  Direction direction = Direction::at_least;
};

struct MarginalEstimate {
  double magnetization = 0.0; // estimate of E[X_v]
  double lo = -1.0;           // final search bracket
  double hi = 1.0;
  std::vector<Probe> probes;

  double plus_probability() const { return 0.5 * (1.0 + magnetization); }
};

// Binary search over t = tanh x in (-1, 1): every probe builds the gadget at
// x = atanh(t), runs the solver and narrows the bracket. Stops when the bracket width is
// at most 2 * tolerance and returns its midpoint, so |result - E[X_v]| <= eps + tolerance.
MarginalEstimate estimate_marginal(const IsingModel& model, Vertex v, int k,
                                   const InfMaxSolver& solver, double epsilon, double tolerance);

// Upper bound on the number of probes: ceil(log2(2 / tolerance)).
int max_probes(double tolerance);

// True when no at_least probe lies more than 2 * epsilon above an at_most probe.
bool probes_consistent(const std::vector<Probe>& probes, double epsilon);

} // namespace infmax
