// Acceptance suite: one PASS/FAIL line per criterion. With no arguments all
// eight criteria run in order; otherwise only the listed ones.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "liouville/verify.hpp"

namespace {

using liouville::CheckResult;

struct Criterion {
  int id;
  std::function<CheckResult()> run;
};

std::vector<Criterion> criteria() {
  return {
      {1, [] { return liouville::verify_upsilon_relations(); }},
      {2, [] { return liouville::verify_dozz_invariants(); }},
      {3, [] { return liouville::verify_shapovalov_fock(6, 10); }},
      {4, [] { return liouville::verify_kac(6); }},
      {5, [] { return liouville::verify_block_coefficients(6); }},
      {6, [] { return liouville::verify_crossing(); }},
      {7,
       [] {
         liouville::GmcConfig cfg;
         cfg.n_samples = 100000;
         return liouville::verify_gmc_dozz(cfg);
       }},
      {8, [] { return liouville::verify_gmc_invariants(); }},
  };
}

void print(int id, const CheckResult& r) {
  std::printf("criterion %d %-24s %s  measured %.3e  tolerance %.1e  %.1fs  %s\n", id,
              r.name.c_str(), r.passed ? "PASS" : "FAIL", r.measured, r.tolerance, r.seconds,
              r.detail.c_str());
  for (const std::string& note : r.notes) std::printf("    %s\n", note.c_str());
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  bool all_passed = true;
  for (const Criterion& c : criteria()) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    try {
      const CheckResult r = c.run();
      print(c.id, r);
      all_passed = all_passed && r.passed;
    } catch (const std::exception& e) {
      std::printf("criterion %d FAIL  exception: %s\n", c.id, e.what());
      all_passed = false;
    }
  }
  return all_passed ? EXIT_SUCCESS : EXIT_FAILURE;
}
