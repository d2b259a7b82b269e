#include <cstdio>
#include <string>

#include "nonclassical/validation.hpp"

// One PASS/FAIL line per acceptance criterion; optional arguments select criteria.
int main(int argc, char** argv) {
  int failed = 0;
  auto run = [&failed](const std::string& which) {
    const auto r = nonclassical::run_criterion(which);
    std::printf("%s\n", nonclassical::format_report(r).c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  };
  if (argc > 1) {
    for (int i = 1; i < argc; ++i) run(argv[i]);
  } else {
    for (const auto& c : nonclassical::criteria()) run(std::to_string(c.id));
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
