#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

#ifdef VOLNET_HAVE_OPENMP
#include <omp.h>
#endif

namespace volnet {

/// Execution policy for the data-parallel kernels (rolling windows, bootstrap
/// replications, Monte-Carlo batches). `threads == 1` selects the serial
/// reference path; `threads == 0` means "all hardware threads". Results must
/// not depend on the choice: every kernel writes into preassigned slots and
/// reduces in index order afterwards.
struct ExecPolicy {
    int threads = 1;

    static ExecPolicy serial() { return ExecPolicy{1}; }
    static ExecPolicy parallel(int threads = 0) { return ExecPolicy{threads}; }

    int resolved_threads() const {
#ifdef VOLNET_HAVE_OPENMP
        if (threads <= 0) return omp_get_max_threads();
        return threads;
#else
        return 1;
#endif
    }
};

/// Runs body(i) for i in [0, n). OpenMP when the policy asks for more than one
/// thread, a plain loop otherwise. Exceptions thrown by body are captured and
/// rethrown after the loop (first one wins) so both paths have the same
/// error behavior.
template <typename Body>
void parallel_for(std::int64_t n, const ExecPolicy& policy, Body&& body) {
    if (n <= 0) return;
    const int nthreads = policy.resolved_threads();
#ifdef VOLNET_HAVE_OPENMP
    if (nthreads > 1) {
        std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
        for (std::int64_t i = 0; i < n; ++i) {
            try {
                body(i);
            } catch (...) {
#pragma omp critical(volnet_parallel_for_err)
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        return;
    }
#else
    (void)nthreads;
#endif
    for (std::int64_t i = 0; i < n; ++i) body(i);
}

} // namespace volnet
