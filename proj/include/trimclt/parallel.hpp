#ifndef TRIMCLT_PARALLEL_HPP
#define TRIMCLT_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace trimclt {

/// Number of worker threads to use: `requested` if positive, otherwise the
/// TRIMCLT_THREADS environment variable, otherwise the hardware count.
unsigned resolve_threads(unsigned requested);

/// Runs body(i) for i in [0, count) on `threads` workers. Each index must
/// write only to its own output slot; results are then independent of the
/// scheduling, so outputs are identical for any thread count.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace trimclt

#endif
