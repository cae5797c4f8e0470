#pragma once

#include <cstddef>
#include <functional>

namespace wh {

/// Worker count used by parallel_for. Defaults to 1.
std::size_t thread_count() noexcept;
void set_thread_count(std::size_t n) noexcept;

/// Runs body(i) for i in [0, n) over contiguous static blocks. Each index is
/// handled by exactly one worker and bodies write disjoint outputs, so results
/// do not depend on the worker count. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace wh
