#pragma once

namespace blab {

// Caps the OpenMP worker count from the BLAB_THREADS environment variable.
// No-op when the variable is unset or OpenMP is unavailable.
void apply_thread_cap_from_env();

int worker_count();

}  // namespace blab
