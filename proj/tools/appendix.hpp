#pragma once

// Reproduction of the worked D = -3 examples: closed forms, the k = 6 constant,
// CM values, modified Taylor expansions, Fourier consistency, Hecke identities,
// the lambda = (24,1) combination and class data.

#include "meroform/bigfloat.hpp"

#include <set>
#include <string>
#include <vector>

namespace meroform::appendix {

struct CheckResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::vector<std::string> details;
};

struct Options {
  Precision prec;
  std::set<int> only;            ///< empty: all criteria
  bool inject_wrong_constant = false;  ///< harness self-test: perturb expected constants
};

std::vector<CheckResult> run(const Options& opt);

}  // namespace meroform::appendix
