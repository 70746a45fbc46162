#pragma once

#include <functional>

namespace ordmetrics {

// Runs fn(i) for i in [begin, end) on up to `threads` workers (callers pass
// the --threads setting; <= 1 means the calling thread). Work is handed out
// through a shared atomic counter; the first exception is rethrown after all
// workers join. fn must be safe to call concurrently for distinct i.
void parallel_for(int begin, int end, int threads, const std::function<void(int)>& fn);

}  // namespace ordmetrics
