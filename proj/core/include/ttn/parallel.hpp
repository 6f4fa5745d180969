#pragma once

#include <cstddef>
#include <functional>

namespace ttn {

/// 0 means "use hardware concurrency".
size_t resolve_threads(size_t requested);

/// Run fn(stripe) for stripe = 0..stripes-1 on up to `threads` OS threads.
///
/// Stripe identity, not thread identity, determines all accumulation order,
/// so results are independent of how many threads actually run. The first
/// exception thrown by any stripe is rethrown on the caller.
void parallel_stripes(size_t stripes, size_t threads,
                      const std::function<void(size_t)>& fn);

} // namespace ttn
