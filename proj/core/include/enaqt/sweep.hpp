#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "enaqt/errors.hpp"
#include "enaqt/random.hpp"

namespace enaqt {

/// Independent tasks with dense indices 0..n-1 (the position in `tasks`).
template <typename Descriptor>
struct SweepPlan {
  std::vector<Descriptor> tasks;
  std::uint64_t master_seed = 0;
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned width = 0;
  /// Fraction of failed tasks above which run_sweep throws AggregateError.
  double max_failure_fraction = 1.0;
};

struct TaskContext {
  std::size_t index;
  std::uint64_t seed;  // stable_hash(master_seed, index)
};

template <typename Result>
struct TaskOutcome {
  std::optional<Result> value;
  std::string error;

  bool ok() const noexcept { return value.has_value(); }
};

inline unsigned resolve_width(unsigned hint, std::size_t tasks) {
  unsigned width = hint == 0 ? std::max(1u, std::thread::hardware_concurrency()) : hint;
  return static_cast<unsigned>(std::min<std::size_t>(width, std::max<std::size_t>(tasks, 1)));
}

/// Runs `fn(descriptor, context)` for every task on up to `plan.width` threads.
///
/// Results come back in index order whatever the interleaving. An exception in one task is
/// recorded in its slot and never affects its siblings. `fn` must be pure given its inputs.
template <typename Descriptor, typename Fn>
auto run_sweep(const SweepPlan<Descriptor>& plan, Fn&& fn)
    -> std::vector<TaskOutcome<std::invoke_result_t<Fn&, const Descriptor&, const TaskContext&>>> {
  using Result = std::invoke_result_t<Fn&, const Descriptor&, const TaskContext&>;
  const std::size_t n = plan.tasks.size();
  std::vector<TaskOutcome<Result>> outcomes(n);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      const TaskContext ctx{i, stable_hash(plan.master_seed, i)};
      try {
        outcomes[i].value.emplace(fn(plan.tasks[i], ctx));
      } catch (const std::exception& e) {
        outcomes[i].error = e.what();
      } catch (...) {
        outcomes[i].error = "unknown error";
      }
    }
  };

  const unsigned width = resolve_width(plan.width, n);
  if (width <= 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(width);
    for (unsigned t = 0; t < width; ++t) threads.emplace_back(worker);
  }

  const auto failed = static_cast<std::size_t>(
      std::count_if(outcomes.begin(), outcomes.end(), [](const auto& o) { return !o.ok(); }));
  if (n > 0 && static_cast<double>(failed) > plan.max_failure_fraction * static_cast<double>(n)) {
    std::string first;
    for (const auto& o : outcomes) {
      if (!o.ok()) {
        first = o.error;
        break;
      }
    }
    throw AggregateError(std::to_string(failed) + " of " + std::to_string(n) +
                         " tasks failed (first error: " + first + ")");
  }
  return outcomes;
}

struct SampleStats {
  std::size_t count = 0;
  double mean = std::nan("");
  double stddev = std::nan("");  // n-1 denominator; 0 for a single sample
};

/// Two-pass mean and sample standard deviation, summing in the given order.
inline SampleStats sample_stats(const std::vector<double>& values) {
  SampleStats s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() == 1) {
    s.stddev = 0.0;
    return s;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return s;
}

}  // namespace enaqt

namespace enaqt {

/// `count` points from lo to hi inclusive, equally spaced in log10.
inline std::vector<double> log_space(double lo, double hi, int count) {
  if (count < 2 || !(lo > 0.0) || !(hi > lo)) throw ConfigurationError("log grid needs 0 < lo < hi and >= 2 points");
  std::vector<double> out(static_cast<std::size_t>(count));
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = std::pow(10.0, a + (b - a) * i / (count - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

inline std::vector<double> lin_space(double lo, double hi, int count) {
  if (count < 1 || !(hi >= lo)) throw ConfigurationError("linear grid needs lo <= hi and >= 1 point");
  if (count == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  out.back() = hi;
  return out;
}

}  // namespace enaqt
