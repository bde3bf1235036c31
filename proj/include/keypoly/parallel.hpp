#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <type_traits>
#include <vector>

namespace keypoly {

enum class Execution { Serial, Parallel };

// out[i] = fn(i) for i < count. The first failing index (lowest i) rethrows,
// so both modes report the same error. fn must be safe to call concurrently.
template <class Fn>
auto index_map(std::size_t count, Fn&& fn, Execution mode = Execution::Parallel)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using R = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  auto body = [&](std::size_t i) {
    try {
      slots[i].emplace(fn(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const long n = static_cast<long>(count);
  if (mode == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
  } else {
    for (long i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// Number of OpenMP threads a parallel region would use.
int parallel_threads();

}  // namespace keypoly
