#pragma once

namespace cluster_dispatch {

// Worker threads the parallel kernels may use. Honors the
// CLUSTER_DISPATCH_THREADS environment variable when set to a positive
// integer, otherwise the OpenMP default. Always 1 in non-OpenMP builds.
int max_threads();

// Applies the CLUSTER_DISPATCH_THREADS cap process-wide. Called once at CLI
// startup; safe to call again.
void apply_thread_cap();

} // namespace cluster_dispatch
