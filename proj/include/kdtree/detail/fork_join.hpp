#pragma once

#include <cstddef>
#include <future>
#include <utility>

namespace kdtree::detail {

/*
 * Parent/child split of a thread budget. With a budget above one, the lower
 * half runs on a newly launched child with half the budget while the parent
 * runs the upper half with the remainder, then joins the child. Otherwise
 * both halves run on the calling thread. Exceptions from the child are
 * rethrown by the parent after the join.
 */
template <typename Lower, typename Upper>
void forkJoin(std::size_t threads, Lower&& lower, Upper&& upper) {
  if (threads > 1) {
    const std::size_t childBudget = threads / 2;
    const std::size_t parentBudget = threads - childBudget;
    auto child = std::async(std::launch::async, [&lower, childBudget] { lower(childBudget); });
    try {
      upper(parentBudget);
    } catch (...) {
      child.wait();
      throw;
    }
    child.get();
  } else {
    lower(std::size_t{1});
    upper(std::size_t{1});
  }
}

}  // namespace kdtree::detail
