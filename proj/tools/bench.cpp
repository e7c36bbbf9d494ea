// Benchmark: serial vs parallel trial sweeps of the numeric evaluator.
// Both modes must produce bit-identical trial values; the parallel mode
// exists purely for throughput, and this tool reports the speedup.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "gforms/calculus.hpp"
#include "gforms/form_expr.hpp"
#include "gforms/lie_backend.hpp"
#include "gforms/numeric.hpp"
#include "gforms/transgression.hpp"

using namespace gforms;

namespace {

double run_sweep(const Backend& b, const FormExpr& e, int trials,
                 ExecMode mode, std::vector<double>& out) {
  auto fn = [&](int, Rng& rng) {
    EvalPoint at = sample_point(b, e.arity(), e.degree(), e.slots(), rng);
    return eval_scalar(b, e, at);
  };
  auto t0 = std::chrono::steady_clock::now();
  out = sweep_trials(trials, 12345, mode, fn);
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void bench_case(const std::string& label, const Backend& b, const FormExpr& e,
                int trials) {
  std::vector<double> serial_vals, parallel_vals;
  double ms_serial = run_sweep(b, e, trials, ExecMode::serial, serial_vals);
  double ms_parallel =
      run_sweep(b, e, trials, ExecMode::parallel, parallel_vals);
  bool identical = serial_vals == parallel_vals;
  std::printf("%-28s %6d trials  serial %8.1f ms  parallel %8.1f ms  "
              "speedup %.2fx  identical: %s\n",
              label.c_str(), trials, ms_serial, ms_parallel,
              ms_parallel > 0 ? ms_serial / ms_parallel : 0.0,
              identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  int trials = 2000;
  if (argc > 1) trials = std::atoi(argv[1]);
  Backend sl2 = Backend::make("sl2");
  Backend gl3 = Backend::make("gl3");
  FormExpr heavy = de_rham(doublelagr_form());
  bench_case("doublelagr eval, sl2", sl2, doublelagr_form(), trials);
  bench_case("doublelagr eval, gl3", gl3, doublelagr_form(), trials);
  bench_case("d(doublelagr) eval, gl3", gl3, heavy, trials / 4);
  bench_case("commutator pullback, gl3", gl3,
             pullback(doublelagr_form(),
                      {GroupWord(2, {{0, 1}, {1, 1}}),
                       GroupWord(2, {{0, -1}, {1, -1}})}),
             trials / 4);
  return 0;
}
