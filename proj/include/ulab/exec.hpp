#pragma once

#include <cstddef>
#include <functional>

namespace ulab {

/// Execution knobs shared by the heavy operations.  The library never spawns
/// threads on its own initiative: callers pass the thread count here (the CLI
/// owns that decision) and 1 means fully serial.
struct ExecConfig {
  int threads = 1;            // 0 = hardware concurrency
  double work_budget = 1e10;  // elementary-op refusal threshold
};

int resolve_threads(int requested);

/// Runs body(begin, end) over a static block partition of [0, n).  Results
/// must be written to per-index slots; combined with a deterministic
/// reduction this makes outputs independent of the thread count.
void parallel_blocks(int threads, std::size_t n,
                     const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace ulab
