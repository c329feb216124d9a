#ifndef MBC_INSTANCE_GEN_HPP
#define MBC_INSTANCE_GEN_HPP

#include <cstdint>

#include "mbc/problem.hpp"

namespace mbc {

/// Knobs for the seeded instance generator. Defaults produce small integer
/// instances sized for exact enumeration in property suites.
struct GenParams {
  int claimants_min = 2;
  int claimants_max = 6;
  int issues_min = 1;
  int issues_max = 4;
  long claim_min = 1;
  long claim_max = 9;
  /// Probability that a given claimant draws from a given issue. The draw is
  /// repaired so every claimant has at least one issue and every issue at
  /// least one claimant.
  double alpha_density = 0.55;
  /// Probability that an issue is generated over-claimed (total claim above
  /// its estate); over-claimed estates are a fraction of the total claim.
  double binding_prob = 0.9;
  double binding_frac_min = 0.3;
  double binding_frac_max = 0.9;
  /// Probability of forcing a pair of claimants to share claim and claim set,
  /// so equal-treatment checks have something to bite on.
  double duplicate_prob = 0.2;
  /// When set, claims and estates get small denominators instead of staying
  /// integral.
  bool rational_values = false;
};

/// Deterministic per (params, seed); the result always validates.
MbcProblem random_mbc(const GenParams& params, std::uint64_t seed);

}  // namespace mbc

#endif  // MBC_INSTANCE_GEN_HPP
