#pragma once

// Averages of a scalar term over the symmetric group S_M.
//
// Two kernels with identical semantics:
//   * permutation_average_serial   - reference: one compensated sum over all
//                                    M! terms in lexicographic order.
//   * permutation_average          - OpenMP: S_M is cut into fixed chunks of
//                                    lexicographic ranks; each chunk is summed
//                                    with compensation, and chunk sums are
//                                    reduced in chunk order. Chunking does not
//                                    depend on the thread count, so results
//                                    are identical for every --jobs value.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <numeric>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cohspeed/error.hpp"
#include "cohspeed/linalg.hpp"

namespace cohspeed {

using Permutation = std::vector<int>;

/// Default refusal threshold for exhaustive enumeration (8! = 40320 terms).
inline constexpr std::size_t kBruteForceCap = 8;

/// Ranks per parallel chunk.
inline constexpr std::uint64_t kPermutationChunk = 120;

std::uint64_t factorial(std::size_t m);

/// The `rank`-th permutation of {0..m-1} in lexicographic order.
Permutation unrank_permutation(std::size_t m, std::uint64_t rank);

bool is_permutation_of(std::span<const int> s, std::size_t m);

void require_within_cap(std::size_t m, std::size_t cap);

template <class Term>
double permutation_average_serial(std::size_t m, Term&& term) {
  Permutation s(m);
  std::iota(s.begin(), s.end(), 0);
  CompensatedSum acc;
  do {
    acc.add(term(std::span<const int>(s)));
  } while (std::next_permutation(s.begin(), s.end()));
  return acc.value() / static_cast<double>(factorial(m));
}

/// `jobs` <= 0 uses the OpenMP default team size.
template <class Term>
double permutation_average(std::size_t m, Term&& term, int jobs = 0) {
  const std::uint64_t total = factorial(m);
  const std::uint64_t chunks = (total + kPermutationChunk - 1) / kPermutationChunk;
  std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
  std::exception_ptr failure;
  const auto n = static_cast<std::int64_t>(chunks);
#ifdef _OPENMP
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
  for (std::int64_t c = 0; c < n; ++c) {
    try {
      const std::uint64_t first = static_cast<std::uint64_t>(c) * kPermutationChunk;
      const std::uint64_t count = std::min(kPermutationChunk, total - first);
      Permutation s = unrank_permutation(m, first);
      CompensatedSum acc;
      for (std::uint64_t k = 0; k < count; ++k) {
        acc.add(term(std::span<const int>(s)));
        std::next_permutation(s.begin(), s.end());
      }
      partial[static_cast<std::size_t>(c)] = acc.value();
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical(cohspeed_permutation_failure)
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  (void)jobs;
  if (failure) std::rethrow_exception(failure);
  CompensatedSum acc;
  for (double p : partial) acc.add(p);
  return acc.value() / static_cast<double>(total);
}

}  // namespace cohspeed
