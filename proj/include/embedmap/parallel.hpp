#pragma once

namespace embedmap {

// Global worker count for the row-parallel kernels. Defaults to the machine
// parallelism. Outputs are bit-identical for any worker count: every row is
// computed independently from read-only inputs.
int worker_count();
void set_worker_count(int n);
int hardware_worker_count();

namespace detail {
void parallel_rows_impl(int height, void (*body)(void*, int), void* ctx);
}

template <typename F>
void parallel_rows(int height, F&& fn) {
    detail::parallel_rows_impl(
        height, [](void* ctx, int y) { (*static_cast<F*>(ctx))(y); }, &fn);
}

}  // namespace embedmap
