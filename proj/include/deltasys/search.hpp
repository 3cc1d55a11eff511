#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace deltasys {

enum class SearchStatus { found, none, budget_exhausted };

inline std::string to_string(SearchStatus s) {
  switch (s) {
  case SearchStatus::found: return "found";
  case SearchStatus::none: return "none";
  case SearchStatus::budget_exhausted: return "budget-exhausted";
  }
  return "unknown";
}

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

/// Node budget from DELTASYS_BUDGET when set and positive, else the default.
inline std::uint64_t default_node_budget() {
  if (const char* env = std::getenv("DELTASYS_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultNodeBudget;
}

struct SearchOptions {
  std::uint64_t node_budget = kDefaultNodeBudget;
  unsigned threads = 1; // 0 = hardware concurrency
};

template <class T>
struct SearchOutcome {
  SearchStatus status = SearchStatus::none;
  std::optional<T> witness;
  std::uint64_t nodes = 0;

  bool found() const noexcept { return status == SearchStatus::found; }
};

/// Node counter with a hard cap. `tick` returns false once the cap is passed.
class NodeCounter {
public:
  explicit NodeCounter(std::uint64_t cap) : cap_(cap) {}
  bool tick() noexcept { return ++count_ <= cap_; }
  bool exhausted() const noexcept { return count_ > cap_; }
  std::uint64_t count() const noexcept { return count_; }

private:
  std::uint64_t cap_;
  std::uint64_t count_ = 0;
};

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs task(i, cap) for i = 0..count-1 as if sequentially, stopping at the
/// first task that finds a witness, with one node budget shared in task order.
/// Tasks may run concurrently, but the outcome (witness and node count) is the
/// one the sequential scan produces, so it does not depend on `threads`.
template <class T, class Task>
SearchOutcome<T> ordered_first(std::size_t count, unsigned threads, std::uint64_t budget, Task&& task) {
  threads = std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(std::max<std::size_t>(count, 1)));

  SearchOutcome<T> result;
  if (threads <= 1) {
    std::uint64_t used = 0;
    for (std::size_t i = 0; i < count; ++i) {
      SearchOutcome<T> r = task(i, budget - used);
      if (r.status == SearchStatus::budget_exhausted || r.nodes > budget - used) {
        result.status = SearchStatus::budget_exhausted;
        result.nodes = budget;
        return result;
      }
      used += r.nodes;
      if (r.found()) {
        r.nodes = used;
        return r;
      }
    }
    result.status = SearchStatus::none;
    result.nodes = used;
    return result;
  }

  std::vector<std::optional<SearchOutcome<T>>> slots(count);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_found{count};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      if (i > first_found.load()) continue;
      slots[i] = task(i, budget);
      if (slots[i]->found()) {
        std::size_t cur = first_found.load();
        while (i < cur && !first_found.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::uint64_t used = 0;
  for (std::size_t i = 0; i < count; ++i) {
    SearchOutcome<T>& r = *slots[i];
    if (r.status == SearchStatus::budget_exhausted || r.nodes > budget - used) {
      result.status = SearchStatus::budget_exhausted;
      result.nodes = budget;
      return result;
    }
    used += r.nodes;
    if (r.found()) {
      r.nodes = used;
      return std::move(r);
    }
  }
  result.status = SearchStatus::none;
  result.nodes = used;
  return result;
}

/// Runs task(i) for every i, possibly concurrently, and returns results in index order.
template <class R, class Task>
std::vector<R> parallel_map(std::size_t count, unsigned threads, Task&& task) {
  threads = std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(std::max<std::size_t>(count, 1)));
  std::vector<std::optional<R>> slots(count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) slots[i] = task(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) slots[i] = task(i);
      });
    for (auto& th : pool) th.join();
  }
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

} // namespace deltasys
