#include "gforms/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gforms {

namespace {

struct Ctx {
  const Backend* b;
  const EvalPoint* at;
  std::vector<Eigen::MatrixXd> inv;  // per-factor inverses
};

/// Sign of the (p,q)-shuffle determined by the ascending positions
/// `left` of the first block inside 0..p+q-1.
int shuffle_sign(const std::vector<int>& left) {
  int inversions = 0;
  for (size_t k = 0; k < left.size(); ++k)
    inversions += left[k] - static_cast<int>(k);
  return (inversions % 2 == 0) ? 1 : -1;
}

/// Enumerate all p-subsets of {0..total-1} in lexicographic order.
void for_each_subset(int total, int p,
                     const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(p);
  for (int i = 0; i < p; ++i) idx[i] = i;
  if (p == 0) {
    fn(idx);
    return;
  }
  while (true) {
    fn(idx);
    int i = p - 1;
    while (i >= 0 && idx[i] == total - p + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int k = i + 1; k < p; ++k) idx[k] = idx[k - 1] + 1;
  }
}

Value eval_rec(const Ctx& ctx, const FormExpr& e, const std::vector<int>& sel);

/// Antisymmetrized binary combination over (p,q)-shuffles of sel.
Value eval_binary(const Ctx& ctx, const FormExpr& e,
                  const std::vector<int>& sel) {
  const FormExpr& l = e.lhs();
  const FormExpr& r = e.rhs();
  const int p = l.degree();
  const int total = static_cast<int>(sel.size());
  Value out;
  out.valued = e.valued();
  int n = ctx.b->n();
  if (out.valued == Valued::lie) out.m = Eigen::MatrixXd::Zero(n, n);
  for_each_subset(total, p, [&](const std::vector<int>& leftpos) {
    std::vector<int> lsel, rsel;
    lsel.reserve(p);
    rsel.reserve(total - p);
    std::vector<bool> taken(total, false);
    for (int pos : leftpos) taken[pos] = true;
    for (int i = 0; i < total; ++i)
      (taken[i] ? lsel : rsel).push_back(sel[i]);
    double sgn = shuffle_sign(leftpos);
    Value lv = eval_rec(ctx, l, lsel);
    Value rv = eval_rec(ctx, r, rsel);
    switch (e.kind()) {
      case Kind::pair:
        out.s += sgn * ctx.b->pair(lv.m, rv.m);
        break;
      case Kind::bracket:
        out.m += sgn * (lv.m * rv.m - rv.m * lv.m);
        break;
      case Kind::wedge:
        out.s += sgn * lv.s * rv.s;
        break;
      default:
        throw std::logic_error("eval_binary: not a binary kind");
    }
  });
  return out;
}

Value eval_rec(const Ctx& ctx, const FormExpr& e, const std::vector<int>& sel) {
  const int n = ctx.b->n();
  Value out;
  out.valued = e.valued();
  switch (e.kind()) {
    case Kind::zero:
      if (out.valued == Valued::lie) out.m = Eigen::MatrixXd::Zero(n, n);
      return out;
    case Kind::lmc:
      out.m = ctx.inv[e.factor()] * ctx.at->tangents[sel[0]][e.factor()];
      return out;
    case Kind::rmc:
      out.m = ctx.at->tangents[sel[0]][e.factor()] * ctx.inv[e.factor()];
      return out;
    case Kind::ad: {
      Eigen::MatrixXd w = e.word().eval(ctx.at->point);
      Value body = eval_rec(ctx, e.body(), sel);
      out.m = w.partialPivLu().solve(body.m) * w;
      return out;
    }
    case Kind::lie_const:
      out.m = e.matrix();
      return out;
    case Kind::slot: {
      auto it = ctx.at->slots.find(e.slot_name());
      if (it == ctx.at->slots.end())
        throw std::invalid_argument("unbound slot: " + e.slot_name());
      out.m = it->second;
      return out;
    }
    case Kind::pair:
    case Kind::bracket:
    case Kind::wedge:
      return eval_binary(ctx, e, sel);
    case Kind::sum: {
      if (out.valued == Valued::lie) out.m = Eigen::MatrixXd::Zero(n, n);
      for (const auto& [c, t] : e.terms()) {
        Value v = eval_rec(ctx, t, sel);
        double cd = rat_double(c);
        if (out.valued == Valued::lie)
          out.m += cd * v.m;
        else
          out.s += cd * v.s;
      }
      return out;
    }
  }
  throw std::logic_error("eval_rec: unhandled kind");
}

}  // namespace

Value eval(const Backend& b, const FormExpr& e, const EvalPoint& at) {
  if (static_cast<int>(at.point.size()) != e.arity())
    throw std::invalid_argument("eval: point has wrong number of factors");
  if (static_cast<int>(at.tangents.size()) != e.degree())
    throw std::invalid_argument("eval: expected one tangent per degree");
  for (const Tangent& t : at.tangents)
    if (static_cast<int>(t.size()) != e.arity())
      throw std::invalid_argument("eval: tangent has wrong block count");
  Ctx ctx{&b, &at, {}};
  ctx.inv.reserve(at.point.size());
  for (const Eigen::MatrixXd& g : at.point) ctx.inv.push_back(b.inverse(g));
  std::vector<int> sel(e.degree());
  for (int i = 0; i < e.degree(); ++i) sel[i] = i;
  return eval_rec(ctx, e, sel);
}

double eval_scalar(const Backend& b, const FormExpr& e, const EvalPoint& at) {
  Value v = eval(b, e, at);
  if (v.valued != Valued::scalar)
    throw std::invalid_argument("eval_scalar: expression is Lie-valued");
  return v.s;
}

Tangent unit_tangent(int arity, int factor, const Eigen::MatrixXd& xi) {
  Tangent t(arity, Eigen::MatrixXd::Zero(xi.rows(), xi.cols()));
  t[factor] = xi;
  return t;
}

EvalPoint sample_point(const Backend& b, int arity, int degree,
                       const std::set<std::string>& slots, Rng& rng,
                       double radius) {
  EvalPoint at;
  at.point.reserve(arity);
  for (int f = 0; f < arity; ++f)
    at.point.push_back(b.sample_group(rng, radius));
  at.tangents.reserve(degree);
  for (int k = 0; k < degree; ++k) {
    Tangent t;
    t.reserve(arity);
    for (int f = 0; f < arity; ++f)
      t.push_back(at.point[f] * b.sample_lie(rng, radius));
    at.tangents.push_back(std::move(t));
  }
  for (const std::string& name : slots)
    at.slots[name] = b.sample_lie(rng, radius);
  return at;
}

std::vector<double> sweep_trials(
    int trials, std::uint64_t seed, ExecMode mode,
    const std::function<double(int, Rng&)>& fn) {
  std::vector<double> out(trials, 0.0);
  std::exception_ptr error;
  if (mode == ExecMode::parallel) {
#pragma omp parallel for schedule(static)
    for (int t = 0; t < trials; ++t) {
      try {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        out[t] = fn(t, rng);
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
      }
    }
  } else {
    for (int t = 0; t < trials; ++t) {
      try {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        out[t] = fn(t, rng);
      } catch (...) {
        if (!error) error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

namespace {

double value_norm(const Value& v) {
  return v.valued == Valued::scalar ? std::abs(v.s) : v.m.norm();
}

double value_diff(const Value& a, const Value& b) {
  return a.valued == Valued::scalar ? std::abs(a.s - b.s)
                                    : (a.m - b.m).norm();
}

}  // namespace

EqReport equal_numeric(const Backend& b, const FormExpr& e1,
                       const FormExpr& e2, const SamplePlan& plan) {
  EqReport rep;
  if (!e1.same_shape(e2)) {
    rep.status = EqStatus::shape_mismatch;
    rep.shape_error =
        "expected arity " + std::to_string(e1.arity()) + ", degree " +
        std::to_string(e1.degree()) + ", " +
        (e1.valued() == Valued::lie ? "lie" : "scalar") + "-valued; got arity " +
        std::to_string(e2.arity()) + ", degree " + std::to_string(e2.degree()) +
        ", " + (e2.valued() == Valued::lie ? "lie" : "scalar") + "-valued";
    return rep;
  }
  std::set<std::string> slots = e1.slots();
  {
    auto s2 = e2.slots();
    slots.insert(s2.begin(), s2.end());
  }
  const int arity = e1.arity();
  const int degree = e1.degree();
  auto residual_of = [&](int, Rng& rng) {
    EvalPoint at = sample_point(b, arity, degree, slots, rng, plan.radius);
    Value v1 = eval(b, e1, at);
    Value v2 = eval(b, e2, at);
    return value_diff(v1, v2) /
           std::max({1.0, value_norm(v1), value_norm(v2)});
  };
  std::vector<double> residuals =
      sweep_trials(plan.trials, plan.seed, plan.mode, residual_of);
  rep.trials = plan.trials;
  int worst = 0;
  for (int t = 0; t < plan.trials; ++t)
    if (residuals[t] > residuals[worst]) worst = t;
  rep.max_residual = residuals.empty() ? 0.0 : residuals[worst];
  rep.status =
      rep.max_residual <= plan.tol ? EqStatus::equal : EqStatus::not_equal;
  if (!residuals.empty()) {
    // Reconstruct the worst trial for the witness (deterministic reseed).
    Rng rng(derive_seed(plan.seed, static_cast<std::uint64_t>(worst)));
    EvalPoint at = sample_point(b, arity, degree, slots, rng, plan.radius);
    EqWitness w;
    w.trial = worst;
    w.residual = rep.max_residual;
    w.point = at.point;
    w.tangents = at.tangents;
    w.slots = at.slots;
    w.v1 = eval(b, e1, at);
    w.v2 = eval(b, e2, at);
    rep.witness = std::move(w);
  }
  return rep;
}

}  // namespace gforms
