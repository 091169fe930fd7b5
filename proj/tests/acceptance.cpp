// One line per acceptance criterion, followed by the supporting detail.

#include "appendix.hpp"

#include <iostream>

int main() {
  meroform::appendix::Options opt;
  opt.prec = meroform::Precision(200);
  auto results = meroform::appendix::run(opt);
  int failed = 0;
  for (const auto& r : results)
    std::cout << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.title << "\n";
  std::cout << "\n";
  for (const auto& r : results) {
    std::cout << "criterion " << r.id << " detail\n";
    for (const auto& d : r.details) std::cout << "    " << d << "\n";
    if (!r.pass) ++failed;
  }
  std::cout << "\n" << results.size() - failed << "/" << results.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
