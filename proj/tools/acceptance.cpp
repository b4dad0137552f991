#include <chrono>
#include <iostream>

#include "galileq/suites.hpp"

using namespace galileq;

// Prints one line per criterion. The exit status reflects whether every suite ran to completion;
// criteria that fail are reported as FAIL with their failing checks.
int main(int argc, char** argv) {
  bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  int passed = 0, crashed = 0;
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& c : acceptance_criteria()) {
    SuiteResult r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      ++crashed;
      std::cout << "criterion " << c.number << ": FAIL " << c.title << " (error: " << e.what() << ")\n";
      continue;
    }
    if (r.ok) ++passed;
    std::cout << "criterion " << c.number << ": " << (r.ok ? "PASS " : "FAIL ") << c.title;
    if (!r.ok) {
      std::cout << " [" << r.failures.size() << " failing: " << r.failures.front();
      if (r.failures.size() > 1) std::cout << ", ...";
      std::cout << "]";
    }
    std::cout << "\n";
    if (verbose) std::cout << r.detail.dump(2) << "\n";
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << passed << "/9 criteria pass (" << dt << " s)\n";
  return crashed ? 1 : 0;
}
