#pragma once
// Numeric evaluation of form expressions on a matrix backend, and the
// randomized equality engine with serial and OpenMP-parallel trial
// sweeps (identical results either way).

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gforms/form_expr.hpp"
#include "gforms/lie_backend.hpp"

namespace gforms {

/// A tangent vector on G^arity: one ambient matrix block per factor.
using Tangent = std::vector<Eigen::MatrixXd>;

/// Evaluation site: group point, one tangent per form degree, and values
/// for any named slots.
struct EvalPoint {
  std::vector<Eigen::MatrixXd> point;
  std::vector<Tangent> tangents;
  std::map<std::string, Eigen::MatrixXd> slots;
};

struct Value {
  Valued valued;
  double s = 0.0;       // scalar-valued result
  Eigen::MatrixXd m;    // Lie-valued result
};

/// Evaluate e at the site; tangents.size() must equal e.degree().
Value eval(const Backend& b, const FormExpr& e, const EvalPoint& at);
double eval_scalar(const Backend& b, const FormExpr& e, const EvalPoint& at);

/// Elementary tangent: block xi on one factor, zero on the others.
Tangent unit_tangent(int arity, int factor, const Eigen::MatrixXd& xi);

/// Random site for expressions of the given shape: group point per
/// factor, full random tangents (a_f * xi_f on every factor), and random
/// algebra elements for each listed slot (sorted order). `radius` scales
/// every draw; shrink it to tame conditioning for long moment words.
EvalPoint sample_point(const Backend& b, int arity, int degree,
                       const std::set<std::string>& slots, Rng& rng,
                       double radius = 1.0);

enum class ExecMode { serial, parallel };

/// Run fn(trial, rng) for trial = 0..trials-1 with per-trial derived
/// seeds; parallel mode uses OpenMP but returns identical values.
std::vector<double> sweep_trials(
    int trials, std::uint64_t seed, ExecMode mode,
    const std::function<double(int, Rng&)>& fn);

struct SamplePlan {
  int trials = 200;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  ExecMode mode = ExecMode::parallel;
  double radius = 1.0;  // sampling ball radius (conditioning control)
};

enum class EqStatus { equal, not_equal, shape_mismatch };

/// Worst sample of a comparison, kept for failure reports.
struct EqWitness {
  int trial = -1;
  double residual = 0.0;
  std::vector<Eigen::MatrixXd> point;
  std::vector<Tangent> tangents;
  std::map<std::string, Eigen::MatrixXd> slots;
  Value v1, v2;
};

struct EqReport {
  EqStatus status = EqStatus::equal;
  double max_residual = 0.0;
  int trials = 0;
  std::string shape_error;  // set when status == shape_mismatch
  std::optional<EqWitness> witness;
};

/// Randomized equality test: samples common sites and compares values
/// with residual |v1 - v2| / max(1, |v1|, |v2|). Shape differences
/// (arity, degree, valuedness) short-circuit to shape_mismatch.
EqReport equal_numeric(const Backend& b, const FormExpr& e1,
                       const FormExpr& e2, const SamplePlan& plan);

}  // namespace gforms
