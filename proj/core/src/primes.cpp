#include "cosettree/primes.hpp"

#include <mutex>

namespace cosettree {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t d = 5; d <= n / d; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

namespace {

std::vector<std::uint64_t>& prime_cache() {
  static std::vector<std::uint64_t> cache = {2, 3, 5, 7, 11, 13};
  return cache;
}

std::mutex& prime_cache_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::uint64_t nth_prime(std::size_t i) {
  std::lock_guard<std::mutex> lock(prime_cache_mutex());
  auto& cache = prime_cache();
  while (cache.size() <= i) {
    std::uint64_t candidate = cache.back() + 2;
    while (!is_prime(candidate)) candidate += 2;
    cache.push_back(candidate);
  }
  return cache[i];
}

std::optional<std::size_t> prime_index(std::uint64_t p) {
  if (!is_prime(p)) return std::nullopt;
  std::size_t i = 0;
  while (true) {
    const std::uint64_t q = nth_prime(i);
    if (q == p) return i;
    if (q > p) return std::nullopt;  // unreachable for prime p
    ++i;
  }
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> factors;
  for (std::uint64_t d = 2; d <= n / d; ++d) {
    if (n % d == 0) {
      std::uint32_t e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      factors.emplace_back(d, e);
    }
  }
  if (n > 1) factors.emplace_back(n, 1);
  return factors;
}

}  // namespace cosettree
