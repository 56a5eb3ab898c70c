#include "embedmap/parallel.hpp"

#include <atomic>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "embedmap/error.hpp"

namespace embedmap {

namespace {
std::atomic<int> g_workers{0};  // 0 = unset, fall back to hardware
}

int hardware_worker_count() {
    const unsigned n = std::thread::hardware_concurrency();
    return n > 0 ? static_cast<int>(n) : 1;
}

int worker_count() {
    const int n = g_workers.load(std::memory_order_relaxed);
    return n > 0 ? n : hardware_worker_count();
}

void set_worker_count(int n) {
    if (n < 1) throw ValidationError("worker count must be >= 1");
    g_workers.store(n, std::memory_order_relaxed);
}

namespace detail {

void parallel_rows_impl(int height, void (*body)(void*, int), void* ctx) {
    const int workers = worker_count();
    if (workers <= 1 || height < 2) {
        for (int y = 0; y < height; ++y) body(ctx, y);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(workers)
    for (int y = 0; y < height; ++y) body(ctx, y);
#else
    for (int y = 0; y < height; ++y) body(ctx, y);
#endif
}

}  // namespace detail

}  // namespace embedmap
