#pragma once

namespace centralspin {

// Serial is the reference path; Parallel runs the same per-element
// arithmetic under OpenMP and must produce bit-identical results.
enum class ExecutionPolicy { Serial, Parallel };

}  // namespace centralspin
