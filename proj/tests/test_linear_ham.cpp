#include <doctest.h>

#include "gforms/lie_backend.hpp"
#include "gforms/linear_ham.hpp"
#include "gforms/numeric.hpp"

using namespace gforms;

namespace {

SamplePlan quick(int trials, std::uint64_t seed) {
  SamplePlan p;
  p.trials = trials;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("cotangent space of the adjoint representation") {
  for (const char* fam : {"sl2", "gl2"}) {
    Backend b = Backend::make(fam);
    LinearReport r = cotangent_adjoint_check(b, quick(80, 71));
    CHECK(r.status == EqStatus::equal);
    CHECK(r.max_residual < 1e-9);
    CHECK(r.trials > 0);
  }
}

TEST_CASE("coadjoint quotient: composition law and tautological pairing") {
  for (const char* fam : {"sl2", "gl3"}) {
    Backend b = Backend::make(fam);
    CoadjointReport r = coadjoint_check(b, quick(80, 72));
    CHECK(r.status == EqStatus::equal);
    CHECK(r.max_residual < 1e-9);
    CHECK(r.full_rank);
    CHECK(r.smallest_singular > 1e-9);
  }
}
