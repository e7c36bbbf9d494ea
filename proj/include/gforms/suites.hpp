#pragma once
// Named verification suites assembled from the library's checks.

#include <string>
#include <vector>

#include "gforms/report.hpp"

namespace gforms {

/// Suite names: all, lie, forms, cech, torsor, transgression, qham.
bool is_known_suite(const std::string& name);
std::vector<std::string> suite_names();

/// Run one suite (or all of them) against the configured backend.
/// Backend-pinned example checks (the gl1 torus, the frozen sl2 oracles)
/// construct their own backends and run regardless of cfg.backend.
std::vector<CheckResult> run_suite(const std::string& suite,
                                   const Backend& b, const RunConfig& cfg);

}  // namespace gforms
