#include "kitaev/optimize.hpp"

#include <cmath>
#include <limits>

#include "kitaev/error.hpp"

namespace kitaev::opt {

AnnealResult anneal(const Objective& f, Eigen::VectorXd x0,
                    const AnnealConfig& cfg, std::mt19937_64& rng) {
  if (x0.size() == 0) throw InvalidArgument("anneal: empty parameter vector");
  std::uniform_int_distribution<Eigen::Index> pick(0, x0.size() - 1);
  std::normal_distribution<double> step(0.0, cfg.step_size);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  AnnealResult best{x0, f(x0), 0};
  Eigen::VectorXd x = x0;
  double fx = best.value;
  double temp = cfg.initial_temperature;
  for (int s = 0; s < cfg.steps; ++s) {
    const Eigen::Index i = pick(rng);
    const double old = x(i);
    x(i) += step(rng);
    const double fy = f(x);
    const double u = unif(rng);
    if (fy <= fx || (temp > 0 && u < std::exp(-(fy - fx) / temp))) {
      fx = fy;
      ++best.accepted;
      if (fy < best.value) {
        best.value = fy;
        best.x = x;
      }
    } else {
      x(i) = old;
    }
    temp *= cfg.cooling;
  }
  return best;
}

namespace {

struct Probe {
  double a;
  double f;
  double d;  // directional derivative
  Eigen::VectorXd g;
};

// Nocedal & Wright algorithms 3.5/3.6 with bisection-safeguarded cubic
// interpolation in the zoom phase.
class LineSearch {
 public:
  LineSearch(const ObjectiveWithGradient& fg, const Eigen::VectorXd& x,
             const Eigen::VectorXd& p, double f0, double d0, int& evals)
      : fg_(fg), x_(x), p_(p), f0_(f0), d0_(d0), evals_(evals) {}

  bool run(Probe& out) {
    Probe prev{0.0, f0_, d0_, {}};
    double a = 1.0;
    for (int i = 0; i < 20; ++i) {
      Probe cur = eval(a);
      if (!std::isfinite(cur.f)) return false;
      if (cur.f > f0_ + kC1 * a * d0_ || (i > 0 && cur.f >= prev.f)) {
        return zoom(prev, cur, out);
      }
      if (std::abs(cur.d) <= -kC2 * d0_) {
        out = cur;
        return true;
      }
      if (cur.d >= 0) return zoom(cur, prev, out);
      prev = cur;
      a *= 2.0;
    }
    out = prev;
    return prev.a > 0;
  }

 private:
  static constexpr double kC1 = 1e-4;
  static constexpr double kC2 = 0.9;

  Probe eval(double a) {
    Probe pr;
    pr.a = a;
    pr.g.resize(x_.size());
    pr.f = fg_(x_ + a * p_, pr.g);
    pr.d = pr.g.dot(p_);
    ++evals_;
    return pr;
  }

  static double interpolate(const Probe& lo, const Probe& hi) {
    const double d1 = lo.d + hi.d - 3 * (lo.f - hi.f) / (lo.a - hi.a);
    const double disc = d1 * d1 - lo.d * hi.d;
    const double mid = 0.5 * (lo.a + hi.a);
    if (disc < 0) return mid;
    const double d2 = std::copysign(std::sqrt(disc), hi.a - lo.a);
    const double a =
        hi.a - (hi.a - lo.a) * (hi.d + d2 - d1) / (hi.d - lo.d + 2 * d2);
    const double lo_b = std::min(lo.a, hi.a);
    const double hi_b = std::max(lo.a, hi.a);
    const double margin = 0.1 * (hi_b - lo_b);
    if (!std::isfinite(a) || a < lo_b + margin || a > hi_b - margin) return mid;
    return a;
  }

  bool zoom(Probe lo, Probe hi, Probe& out) {
    for (int i = 0; i < 40; ++i) {
      if (std::abs(hi.a - lo.a) < 1e-14) break;
      Probe cur = eval(interpolate(lo, hi));
      if (cur.f > f0_ + kC1 * cur.a * d0_ || cur.f >= lo.f) {
        hi = cur;
      } else {
        if (std::abs(cur.d) <= -kC2 * d0_) {
          out = cur;
          return true;
        }
        if (cur.d * (hi.a - lo.a) >= 0) hi = lo;
        lo = cur;
      }
    }
    // Accept any sufficient decrease found.
    if (lo.a > 0 && lo.f < f0_) {
      out = lo;
      return true;
    }
    return false;
  }

  const ObjectiveWithGradient& fg_;
  const Eigen::VectorXd& x_;
  const Eigen::VectorXd& p_;
  double f0_;
  double d0_;
  int& evals_;
};

}  // namespace

BfgsResult bfgs(const ObjectiveWithGradient& fg, Eigen::VectorXd x0,
                const BfgsConfig& cfg) {
  const Eigen::Index n = x0.size();
  if (n == 0) throw InvalidArgument("bfgs: empty parameter vector");
  BfgsResult r;
  r.x = std::move(x0);
  Eigen::VectorXd g(n);
  r.value = fg(r.x, g);
  r.evaluations = 1;
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  bool fresh = true;

  while (r.iterations < cfg.max_iterations) {
    if (g.norm() < 1e-12) {
      r.converged = true;
      break;
    }
    Eigen::VectorXd p = -hinv * g;
    double d0 = g.dot(p);
    if (!(d0 < 0)) {
      hinv.setIdentity();
      p = -g;
      d0 = -g.squaredNorm();
      fresh = true;
    }
    Probe pr;
    LineSearch ls(fg, r.x, p, r.value, d0, r.evaluations);
    if (!ls.run(pr)) {
      if (fresh) break;  // no progress along steepest descent
      hinv.setIdentity();
      fresh = true;
      continue;
    }
    ++r.iterations;
    const Eigen::VectorXd s = pr.a * p;
    const Eigen::VectorXd y = pr.g - g;
    const double drop = r.value - pr.f;
    r.x += s;
    r.value = pr.f;
    g = pr.g;
    const double sy = s.dot(y);
    if (sy > 1e-14) {
      if (fresh) hinv *= sy / y.squaredNorm();
      const double rho = 1.0 / sy;
      const Eigen::VectorXd hy = hinv * y;
      hinv += (rho * rho * y.dot(hy) + rho) * (s * s.transpose()) -
              rho * (hy * s.transpose() + s * hy.transpose());
      fresh = false;
    }
    if (drop < cfg.tolerance) {
      r.converged = true;
      break;
    }
  }
  return r;
}

}  // namespace kitaev::opt
