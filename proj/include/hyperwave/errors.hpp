#pragma once

#include <stdexcept>
#include <string>

namespace hyperwave {

/// det(Y + I) <= 0 at a material evaluation point.
class NonPositiveJacobian : public std::runtime_error {
public:
  explicit NonPositiveJacobian(double det, int element = -1, int qp = -1)
      : std::runtime_error("non-positive deformation Jacobian det(F)=" + std::to_string(det) +
                           (element >= 0 ? " at element " + std::to_string(element) + ", qp " + std::to_string(qp)
                                         : std::string{})),
        det_value(det), element_id(element), qp_index(qp) {}
  double det_value;
  int element_id;
  int qp_index;
};

class DegenerateExtent : public std::invalid_argument {
public:
  explicit DegenerateExtent(const std::string& what) : std::invalid_argument(what) {}
};

class NotConverged : public std::runtime_error {
public:
  NotConverged(int iters, double residual)
      : std::runtime_error("iterative solver not converged after " + std::to_string(iters) +
                           " iterations, residual " + std::to_string(residual)),
        iterations(iters), residual_norm(residual) {}
  int iterations;
  double residual_norm;
};

class IndefiniteMatrix : public std::runtime_error {
public:
  explicit IndefiniteMatrix(double curvature)
      : std::runtime_error("matrix not positive definite: p'Ap = " + std::to_string(curvature)),
        curvature_value(curvature) {}
  double curvature_value;
};

class NewtonDiverged : public std::runtime_error {
public:
  NewtonDiverged(int step, int iter, double residual)
      : std::runtime_error("Newton iteration diverged at time step " + std::to_string(step) +
                           ", iteration " + std::to_string(iter) + ", residual " + std::to_string(residual)),
        time_step(step), iteration(iter), residual_norm(residual) {}
  int time_step;
  int iteration;
  double residual_norm;
};

class LengthMismatch : public std::invalid_argument {
public:
  LengthMismatch(std::size_t got, std::size_t expected)
      : std::invalid_argument("length mismatch: got " + std::to_string(got) + ", expected " +
                              std::to_string(expected)),
        got_size(got), expected_size(expected) {}
  std::size_t got_size;
  std::size_t expected_size;
};

class ZeroSignal : public std::invalid_argument {
public:
  ZeroSignal() : std::invalid_argument("cannot add relative noise to an identically zero signal") {}
};

class InvalidTau : public std::invalid_argument {
public:
  explicit InvalidTau(double tau)
      : std::invalid_argument("discrepancy parameter tau must exceed 2, got " + std::to_string(tau)),
        tau_value(tau) {}
  double tau_value;
};

class InteriorNode : public std::invalid_argument {
public:
  explicit InteriorNode(int node)
      : std::invalid_argument("sensor node " + std::to_string(node) + " is not on the boundary"),
        node_id(node) {}
  int node_id;
};

class UnknownScenario : public std::invalid_argument {
public:
  explicit UnknownScenario(const std::string& name)
      : std::invalid_argument("unknown scenario '" + name + "'"), scenario_name(name) {}
  std::string scenario_name;
};

class InvalidWidth : public std::invalid_argument {
public:
  explicit InvalidWidth(const std::string& what) : std::invalid_argument(what) {}
};

class DegenerateDenominator : public std::runtime_error {
public:
  explicit DegenerateDenominator(double value)
      : std::runtime_error("denominator too small: " + std::to_string(value)), denominator(value) {}
  double denominator;
};

} // namespace hyperwave
