#pragma once

namespace gll {

// Sweep kernels come in two flavours: a plain serial loop kept as the
// reference implementation, and an OpenMP version that must produce
// bit-identical results (every slot is computed independently and written
// by index, so thread count never changes the output).
enum class Exec { serial, parallel };

// Worker bound for parallel sweeps: explicit set_max_threads() wins,
// then the GLL_THREADS environment variable, then the OpenMP default.
int max_threads();
void set_max_threads(int n);

}  // namespace gll
