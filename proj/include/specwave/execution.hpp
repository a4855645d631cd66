#pragma once

namespace specwave {

// Selects the OpenMP path or the serial reference path of a data-parallel kernel.
// Both produce the same numbers up to summation order inside reductions.
enum class Execution { serial, parallel };

int max_threads();

}  // namespace specwave
