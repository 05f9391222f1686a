#include "gammatail/acceptance.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>

int main(int argc, char** argv) {
  gammatail::acceptance::Options opts;
  opts.threads = static_cast<int>(std::max(2u, std::thread::hardware_concurrency()));
  if (argc > 1) opts.inject_fault = std::atoi(argv[1]);
  const auto results = gammatail::acceptance::run_all(opts);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] criterion %d (%s): %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.detail.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  return failed == 0 ? 0 : 1;
}
