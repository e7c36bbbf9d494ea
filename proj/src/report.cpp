#include "gforms/report.hpp"

#include <Eigen/Dense>

namespace gforms {

namespace {

nlohmann::ordered_json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

const char* status_str(CheckResult::Status s) {
  switch (s) {
    case CheckResult::Status::pass: return "pass";
    case CheckResult::Status::fail: return "fail";
    case CheckResult::Status::inconclusive: return "inconclusive";
  }
  return "unknown";
}

}  // namespace

CheckResult check_from_eq(const std::string& id, const std::string& statement,
                          const EqReport& eq, bool expect_not_equal) {
  CheckResult r;
  r.id = id;
  r.statement = statement;
  r.control = expect_not_equal;
  r.max_residual = eq.max_residual;
  r.trials = eq.trials;
  if (eq.status == EqStatus::shape_mismatch) {
    // A shape mismatch is a detected difference for a control and a
    // hard failure otherwise.
    r.status = expect_not_equal ? CheckResult::Status::pass
                                : CheckResult::Status::fail;
    r.details = {{"shape_error", eq.shape_error}};
    return r;
  }
  bool differs = eq.status == EqStatus::not_equal;
  bool ok = expect_not_equal ? differs : !differs;
  r.status = ok ? CheckResult::Status::pass : CheckResult::Status::fail;
  if (differs && eq.witness) r.details = {{"witness", witness_json(*eq.witness)}};
  return r;
}

nlohmann::ordered_json witness_json(const EqWitness& w) {
  nlohmann::ordered_json j;
  j["trial"] = w.trial;
  j["residual"] = w.residual;
  nlohmann::ordered_json point = nlohmann::ordered_json::array();
  for (const auto& m : w.point) point.push_back(matrix_json(m));
  j["point"] = std::move(point);
  nlohmann::ordered_json tangents = nlohmann::ordered_json::array();
  for (const Tangent& t : w.tangents) {
    nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
    for (const auto& m : t) blocks.push_back(matrix_json(m));
    tangents.push_back(std::move(blocks));
  }
  j["tangents"] = std::move(tangents);
  if (!w.slots.empty()) {
    nlohmann::ordered_json slots;
    for (const auto& [name, m] : w.slots) slots[name] = matrix_json(m);
    j["slots"] = std::move(slots);
  }
  auto value_json = [](const Value& v) -> nlohmann::ordered_json {
    if (v.valued == Valued::scalar) return v.s;
    return matrix_json(v.m);
  };
  j["lhs"] = value_json(w.v1);
  j["rhs"] = value_json(w.v2);
  return j;
}

nlohmann::ordered_json make_report(const RunConfig& cfg, const Backend& b,
                                   const std::vector<CheckResult>& checks) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["config"] = {{"suite", cfg.suite},
                 {"backend", cfg.backend},
                 {"n", cfg.n},
                 {"trials", cfg.trials},
                 {"tol", cfg.tol},
                 {"seed", cfg.seed},
                 {"mode", cfg.mode == ExecMode::parallel ? "parallel"
                                                         : "serial"}};
  j["backend"] = {{"name", b.name()},
                  {"matrix_size", b.n()},
                  {"dim", b.dim()},
                  {"pairing", b.pairing_desc()}};
  j["conventions"] = {
      {"adjoint", "Ad_g(x) = g^-1 x g (right action: Ad_{gh} = Ad_h . Ad_g)"},
      {"maurer_cartan",
       "theta = a^-1 da (left-invariant), theta_bar = da a^-1 "
       "(right-invariant)"},
      {"pairing_normalization", b.pairing_desc()},
      {"antisymmetrization",
       "products of forms antisymmetrize over shuffles with no prefactor; "
       "(alpha, beta) = -(beta, alpha) on 1-forms"},
      {"cartan_3_form", "omega1 = 1/12 (theta, [theta, theta])"},
      {"residual", "|v1 - v2| / max(1, |v1|, |v2|), maximized over trials"}};
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  int passed = 0, failed = 0, inconclusive = 0;
  for (const CheckResult& c : checks) {
    nlohmann::ordered_json e;
    e["id"] = c.id;
    e["statement"] = c.statement;
    e["status"] = status_str(c.status);
    if (c.control) e["control"] = true;
    e["max_residual"] = c.max_residual;
    e["trials"] = c.trials;
    if (!c.details.is_null()) e["details"] = c.details;
    arr.push_back(std::move(e));
    switch (c.status) {
      case CheckResult::Status::pass: ++passed; break;
      case CheckResult::Status::fail: ++failed; break;
      case CheckResult::Status::inconclusive: ++inconclusive; break;
    }
  }
  j["checks"] = std::move(arr);
  j["summary"] = {{"total", static_cast<int>(checks.size())},
                  {"passed", passed},
                  {"failed", failed},
                  {"inconclusive", inconclusive}};
  return j;
}

bool all_passed(const std::vector<CheckResult>& checks) {
  for (const CheckResult& c : checks)
    if (c.status == CheckResult::Status::fail) return false;
  return true;
}

}  // namespace gforms
