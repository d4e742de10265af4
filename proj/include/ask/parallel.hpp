#pragma once

namespace ask {

// Worker cap shared by all parallel kernels. ASK_THREADS (env) lowers the
// OpenMP default; serial builds always report 1.
int worker_count();

}  // namespace ask
