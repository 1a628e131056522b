#pragma once

namespace sm {

// Thread budget for OpenMP kernels. Reads SIGNAL_MINER_THREADS once; falls
// back to the OpenMP default. Always >= 1.
int thread_cap();

} // namespace sm
