#ifndef COSETTREE_PRIMES_HPP
#define COSETTREE_PRIMES_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace cosettree {

bool is_prime(std::uint64_t n);

/// The fixed ascending enumeration of primes: p_0 = 2, p_1 = 3, p_2 = 5, ...
std::uint64_t nth_prime(std::size_t i);

/// Index of p in the enumeration above; nullopt when p is not prime.
std::optional<std::size_t> prime_index(std::uint64_t p);

/// Prime factorization as (prime, exponent) pairs, primes ascending.
/// factorize(1) is empty.
std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n);

}  // namespace cosettree

#endif  // COSETTREE_PRIMES_HPP
