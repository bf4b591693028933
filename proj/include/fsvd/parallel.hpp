#pragma once

namespace fsvd {

// Number of worker threads used by the sparse kernels. Read once from the
// FSVD_THREADS environment variable (values < 1 or unparsable are ignored)
// and capped by the hardware concurrency.
int thread_count();

}  // namespace fsvd
