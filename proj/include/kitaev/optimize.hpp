#pragma once

#include <functional>
#include <random>

#include <Eigen/Dense>

namespace kitaev::opt {

using Objective = std::function<double(const Eigen::VectorXd&)>;
/// Returns f(x) and writes the gradient.
using ObjectiveWithGradient =
    std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct AnnealConfig {
  double initial_temperature = 0.05;
  double cooling = 0.995;  // per step, geometric
  int steps = 1500;
  double step_size = 0.5;  // Gaussian proposal width (radians)
};

struct AnnealResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int accepted = 0;
};

/// Metropolis annealing with single-coordinate Gaussian proposals. Returns
/// the best point visited.
AnnealResult anneal(const Objective& f, Eigen::VectorXd x0,
                    const AnnealConfig& cfg, std::mt19937_64& rng);

struct BfgsConfig {
  /// Stop once an iteration lowers f by less than this.
  double tolerance = 1e-8;
  int max_iterations = 3000;
};

struct BfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Quasi-Newton minimization with a strong-Wolfe line search.
BfgsResult bfgs(const ObjectiveWithGradient& fg, Eigen::VectorXd x0,
                const BfgsConfig& cfg);

}  // namespace kitaev::opt
