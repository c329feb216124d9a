#ifndef MBC_PERMUTATION_HPP
#define MBC_PERMUTATION_HPP

#include <cstdint>
#include <vector>

namespace mbc {

/// n! for n <= 20 (the largest factorial that fits in 64 bits). Throws
/// std::overflow_error beyond that.
std::uint64_t factorial(int n);

std::vector<int> identity_order(int n);

/// The permutation of {0..n-1} with the given lexicographic rank. Used to
/// start enumeration chunks at arbitrary offsets so that the order space can
/// be partitioned across workers.
std::vector<int> nth_permutation(int n, std::uint64_t rank);

}  // namespace mbc

#endif  // MBC_PERMUTATION_HPP
