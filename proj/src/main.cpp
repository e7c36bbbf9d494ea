// Command-line runner: `gforms verify` executes verification suites and
// emits a deterministic JSON report; `gforms compute` evaluates a named
// form at a point.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gforms/calculus.hpp"
#include "gforms/cech.hpp"
#include "gforms/numeric.hpp"
#include "gforms/qham.hpp"
#include "gforms/report.hpp"
#include "gforms/suites.hpp"
#include "gforms/transgression.hpp"

namespace {

constexpr int kUsageError = 2;

int emit(const std::string& output, const nlohmann::ordered_json& j) {
  std::string text = j.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(output, std::ios::binary);
  if (!f) {
    std::cerr << "cannot open output file: " << output << "\n";
    return kUsageError;
  }
  f << text;
  return 0;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw std::invalid_argument("matrix must be " + std::to_string(n) +
                                " rows of " + std::to_string(n) + " numbers");
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r) {
    const auto& row = j.at(r);
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw std::invalid_argument("matrix must be " + std::to_string(n) +
                                  " rows of " + std::to_string(n) +
                                  " numbers");
    for (int c = 0; c < n; ++c) m(r, c) = row.at(c).get<double>();
  }
  return m;
}

struct NamedForm {
  gforms::FormExpr form;
  std::string slot;  // bound to basis(0) unless given in the point JSON
};

NamedForm named_form(const std::string& what) {
  using gforms::FormExpr;
  if (what == "omega0") {
    gforms::InvariantDatum d = gforms::omega0_datum("x");
    return {d.expr, d.slot};
  }
  if (what == "omega1") return {gforms::omega1_form(), ""};
  if (what == "phi") return {gforms::phi_form(), ""};
  if (what == "h0_torus") return {gforms::doublelagr_form(), ""};
  if (what.rfind("h0_genus", 0) == 0) {
    const std::string digits = what.substr(8);
    if (digits.empty() ||
        digits.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad genus in '" + what + "'");
    int g = std::stoi(digits);
    return {gforms::genus_space(g).h0, ""};
  }
  throw std::invalid_argument(
      "unknown form '" + what +
      "' (expected omega0 | omega1 | phi | h0_torus | h0_genus<g>)");
}

int run_verify(const gforms::RunConfig& cfg) {
  if (!gforms::is_known_suite(cfg.suite)) {
    std::cerr << "unknown suite: " << cfg.suite << "\n";
    return kUsageError;
  }
  std::optional<gforms::Backend> b;
  try {
    b.emplace(gforms::Backend::make(cfg.backend, cfg.n));
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad backend: " << e.what() << "\n";
    return kUsageError;
  }
  std::vector<gforms::CheckResult> checks =
      gforms::run_suite(cfg.suite, *b, cfg);
  nlohmann::ordered_json rep = gforms::make_report(cfg, *b, checks);
  int rc = emit(cfg.output, rep);
  if (rc != 0) return rc;
  return gforms::all_passed(checks) ? 0 : 1;
}

int run_compute(const std::string& what, const std::string& at_json,
                const std::string& tangents_json, const std::string& backend,
                int n, const std::string& output) {
  std::optional<gforms::Backend> backend_opt;
  try {
    backend_opt.emplace(gforms::Backend::make(backend, n));
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad backend: " << e.what() << "\n";
    return kUsageError;
  }
  const gforms::Backend& b = *backend_opt;

  std::optional<NamedForm> nf_opt;
  try {
    nf_opt.emplace(named_form(what));
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kUsageError;
  }
  const NamedForm& nf = *nf_opt;
  const gforms::FormExpr& form = nf.form;
  const int arity = form.arity();
  const int degree = form.degree();
  const int size = b.n();
  const std::string shape = "expected arity " + std::to_string(arity) +
                            " (group elements), degree " +
                            std::to_string(degree) + " (tangents), matrix size " +
                            std::to_string(size);

  gforms::EvalPoint at;
  try {
    // Point: JSON array of matrices, or {"point": [...], "slots": {...}};
    // default is the identity on every factor.
    nlohmann::json slots_json = nlohmann::json::object();
    if (at_json.empty()) {
      for (int f = 0; f < arity; ++f) at.point.push_back(b.identity());
    } else {
      nlohmann::json j = nlohmann::json::parse(at_json);
      const nlohmann::json* point = &j;
      if (j.is_object()) {
        point = &j.at("point");
        if (j.contains("slots")) slots_json = j.at("slots");
      }
      if (!point->is_array() || static_cast<int>(point->size()) != arity)
        throw std::invalid_argument("point must list " +
                                    std::to_string(arity) + " matrices");
      for (const auto& m : *point)
        at.point.push_back(matrix_from_json(m, size));
    }
    // Tangents: array of (array of one matrix per factor); default cycles
    // through the factors and the basis, left-translated at the point.
    if (tangents_json.empty()) {
      for (int k = 0; k < degree; ++k) {
        int f = k % arity;
        gforms::Tangent t = gforms::unit_tangent(
            arity, f, at.point[f] * b.basis(k % b.dim()));
        at.tangents.push_back(std::move(t));
      }
    } else {
      nlohmann::json j = nlohmann::json::parse(tangents_json);
      if (!j.is_array() || static_cast<int>(j.size()) != degree)
        throw std::invalid_argument("tangents must list " +
                                    std::to_string(degree) + " tangents");
      for (const auto& tj : j) {
        if (!tj.is_array() || static_cast<int>(tj.size()) != arity)
          throw std::invalid_argument(
              "each tangent must list one matrix per factor (" +
              std::to_string(arity) + ")");
        gforms::Tangent t;
        for (const auto& m : tj) t.push_back(matrix_from_json(m, size));
        at.tangents.push_back(std::move(t));
      }
    }
    if (!nf.slot.empty()) {
      if (slots_json.contains(nf.slot))
        at.slots[nf.slot] = matrix_from_json(slots_json.at(nf.slot), size);
      else
        at.slots[nf.slot] = b.basis(0);
    }
  } catch (const std::exception& e) {
    std::cerr << "shape mismatch: " << e.what() << "; " << shape << "\n";
    return kUsageError;
  }

  double value = 0.0;
  try {
    value = gforms::eval_scalar(b, form, at);
  } catch (const std::exception& e) {
    std::cerr << "evaluation failed: " << e.what() << "; " << shape << "\n";
    return kUsageError;
  }

  nlohmann::ordered_json out;
  out["what"] = what;
  out["backend"] = b.name();
  out["arity"] = arity;
  out["degree"] = degree;
  out["sexpr"] = form.key();
  if (!nf.slot.empty()) out["slot"] = nf.slot;
  out["value"] = value;
  return emit(output, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Invariant-form verification engine for conjugation quotients of "
      "matrix groups"};
  app.require_subcommand(1);

  gforms::RunConfig cfg;
  CLI::App* verify = app.add_subcommand(
      "verify", "run a verification suite and emit a JSON report");
  verify->add_option("--suite", cfg.suite,
                     "all | lie | forms | cech | torsor | transgression | "
                     "qham");
  verify->add_option("--backend", cfg.backend,
                     "sl2 | so3 | gl1 | gl2 | gl3 | gln");
  verify->add_option("--n", cfg.n, "matrix size for the gln backend");
  verify->add_option("--trials", cfg.trials, "samples per check")
      ->check(CLI::PositiveNumber);
  verify->add_option("--tol", cfg.tol, "relative residual tolerance")
      ->check(CLI::Range(1e-308, 1e-3));
  verify->add_option("--seed", cfg.seed, "master seed");
  verify->add_option("--output", cfg.output,
                     "report file (default: stdout)");

  std::string what, at_json, tangents_json, c_backend = "sl2",
                                            c_output;
  int c_n = 0;
  CLI::App* compute = app.add_subcommand(
      "compute", "evaluate a named form at a point");
  compute->add_option("what", what,
                      "omega0 | omega1 | phi | h0_torus | h0_genus<g>")
      ->required();
  compute->add_option("at", at_json,
                      "JSON point: [matrix,...] or {\"point\": ..., "
                      "\"slots\": ...} (default: identities)");
  compute->add_option("tangents", tangents_json,
                      "JSON tangents: [[matrix per factor],...] (default: "
                      "cycling basis)");
  compute->add_option("--backend", c_backend,
                      "sl2 | so3 | gl1 | gl2 | gl3 | gln");
  compute->add_option("--n", c_n, "matrix size for the gln backend");
  compute->add_option("--output", c_output, "file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (verify->parsed()) return run_verify(cfg);
    return run_compute(what, at_json, tangents_json, c_backend, c_n,
                       c_output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
