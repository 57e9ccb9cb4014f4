#pragma once

#include <cstddef>
#include <functional>

namespace pmt {

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = hardware
/// concurrency). Nested calls from inside a worker run serially. Callers must
/// write results by index; the order in which indices run is unspecified.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace pmt
