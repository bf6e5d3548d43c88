#include <cstdio>
#include <string>

#include "scissors/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::stoi(argv[i]));
  if (ids.empty()) ids = scissors::criteria_for_level("full");
  int failed = 0;
  for (int id : ids) {
    auto r = scissors::run_criterion(id);
    std::printf("%s\n", scissors::format_result(r).c_str());
    std::fflush(stdout);
    failed += !r.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(ids.size()) - failed, ids.size());
  return failed ? 1 : 0;
}
