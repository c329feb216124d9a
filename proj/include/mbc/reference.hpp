#ifndef MBC_REFERENCE_HPP
#define MBC_REFERENCE_HPP

#include "mbc/problem.hpp"

namespace mbc::ref {

/// Serial reference evaluators. They walk every order with a plain
/// next_permutation loop and no chunking, prefix sharing, or OpenMP, and
/// exist so the parallel kernels can be checked for bit-identical output
/// (and timed against) a straight-line implementation.

Allocation cra_exact(const MbcProblem& p);

Allocation crastar_exact(const MbcProblem& p);

}  // namespace mbc::ref

#endif  // MBC_REFERENCE_HPP
