#pragma once

// Named graph examples and the checks run against them.

#include <cstdint>
#include <string>
#include <vector>

#include "calibra/catalog.hpp"

namespace calibra {

struct CheckResult {
  std::string name;
  double value;
  double limit;
  bool pass;
};

struct VerifyReport {
  std::string example;
  std::vector<CheckResult> checks;
  bool pass() const;
};

struct VerifyOptions {
  int samples = 500;
  std::uint64_t seed = 0;
  double tolerance = 1e-6;
};

// Ids: loc, holomorphic:<poly in z>, slag-quadratic:<c1,c2,...>,
// affine:<a11,a12;a21,a22>, affine-tilted[:theta], scherk, simons.
VerifyReport verify_example(const std::string& id, const VerifyOptions& options = {});

// Real coefficients of a polynomial written like "z^3-2z+0.5"; index = power.
std::vector<double> parse_polynomial(const std::string& text);

}  // namespace calibra
