// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Usage: cmdp_acceptance [id ...]   (default: all)

#include "acceptance/criteria.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  using namespace cmdp::acceptance;
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    try {
      ids.push_back(std::stoi(argv[i]));
    } catch (const std::exception&) {
      std::cerr << "usage: cmdp_acceptance [criterion id ...]\n";
      return 2;
    }
  }
  if (ids.empty()) ids = criterion_ids();

  int failed = 0;
  try {
    run_suite(ids, [&](const CriterionResult& r) {
      std::cout << format_line(r) << std::endl;
      failed += r.pass ? 0 : 1;
    });
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  std::cout << (ids.size() - static_cast<std::size_t>(failed)) << "/" << ids.size() << " criteria passed\n";
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
