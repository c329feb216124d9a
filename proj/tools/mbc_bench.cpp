// Times the OpenMP enumeration kernels against the serial reference loops on
// one generated instance and verifies both sides produce identical rationals.

#include <chrono>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "mbc/crastar.hpp"
#include "mbc/instance_gen.hpp"
#include "mbc/reference.hpp"
#include "mbc/rules.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace mbc;
using Clock = std::chrono::steady_clock;

template <typename Fn>
std::pair<double, Allocation> timed(Fn&& fn) {
  auto t0 = Clock::now();
  Allocation result = fn();
  auto t1 = Clock::now();
  return {std::chrono::duration<double>(t1 - t0).count(), std::move(result)};
}

void report(const char* kernel, double serial, double parallel, bool identical) {
  std::printf("%-16s %10.3fs %10.3fs %8.2fx  %s\n", kernel, serial, parallel,
              serial / parallel, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"benchmark the parallel enumeration kernels against the serial reference"};
  int claimants = 9;
  int issues = 3;
  std::uint64_t seed = 1;
  std::uint64_t samples = 2'000'000;
  app.add_option("--claimants", claimants, "claimant count (arrival orders grow as n!)");
  app.add_option("--issues", issues, "issue count");
  app.add_option("--seed", seed, "instance seed");
  app.add_option("--samples", samples, "draw count for the sampled kernel");
  CLI11_PARSE(app, argc, argv);

  GenParams params;
  params.claimants_min = params.claimants_max = claimants;
  params.issues_min = params.issues_max = issues;
  MbcProblem p = random_mbc(params, seed);

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (no OpenMP)\n");
#endif
  std::printf("instance: %d claimants, %d issues, seed %llu\n\n", claimants, issues,
              static_cast<unsigned long long>(seed));
  std::printf("%-16s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");

  EnumBudget budget{.max_orders = ~std::uint64_t{0} >> 1};  // bench sets its own sizes

  {
    auto [ts, serial] = timed([&] { return ref::cra_exact(p); });
    auto [tp, parallel] = timed([&] { return cra_exact(p, budget).allocation; });
    report("cra exact", ts, tp, serial == parallel);
  }
  {
    auto [ts, serial] = timed([&] { return ref::crastar_exact(p); });
    auto [tp, parallel] = timed([&] { return crastar_exact(p, budget).allocation; });
    report("crastar exact", ts, tp, serial == parallel);
  }
  {
    // serial baseline for sampling: one block, same substreams
    auto [tp, parallel] = timed([&] { return cra_sample(p, samples, seed).allocation; });
    std::printf("%-16s %11s %10.3fs %9s  (%llu draws)\n", "cra sampled", "-", tp, "-",
                static_cast<unsigned long long>(samples));
  }
  return 0;
}
