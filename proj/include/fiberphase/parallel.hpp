#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fiberphase {

// Deterministic parallel reduction helpers.
//
// Report files must be byte-identical across runs, so we never rely on an
// OpenMP `reduction` clause whose combination order depends on thread
// scheduling. Instead the index range is cut into fixed-size chunks, each
// chunk is reduced independently (parallel), and the per-chunk partials are
// combined serially in chunk order. The result is identical for any thread
// count, including 1.

inline constexpr std::size_t kReduceChunk = 4096;

// sum over i in [0, n) of term(i)
template <typename TermFn>
double chunked_sum(std::size_t n, TermFn&& term) {
    if (n == 0) return 0.0;
    const std::size_t nchunks = (n + kReduceChunk - 1) / kReduceChunk;
    std::vector<double> partial(nchunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kReduceChunk;
        const std::size_t hi = std::min(lo + kReduceChunk, n);
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += term(i);
        partial[static_cast<std::size_t>(c)] = acc;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

// max over i in [0, n) of term(i); term must return a double >= lower_bound
template <typename TermFn>
double chunked_max(std::size_t n, TermFn&& term, double lower_bound = 0.0) {
    if (n == 0) return lower_bound;
    const std::size_t nchunks = (n + kReduceChunk - 1) / kReduceChunk;
    std::vector<double> partial(nchunks, lower_bound);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kReduceChunk;
        const std::size_t hi = std::min(lo + kReduceChunk, n);
        double acc = lower_bound;
        for (std::size_t i = lo; i < hi; ++i) acc = std::max(acc, term(i));
        partial[static_cast<std::size_t>(c)] = acc;
    }
    double best = lower_bound;
    for (double p : partial) best = std::max(best, p);
    return best;
}

// apply fn(i) for i in [0, n); fn writes only to slot i of its output
template <typename BodyFn>
void parallel_for_index(std::size_t n, BodyFn&& fn) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        fn(static_cast<std::size_t>(i));
    }
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace fiberphase
