// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ponshare Authors.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <mutex>
#include <thread>

#include "ponshare/experiment.hpp"

namespace ponshare {

SampleStats compute_stats(std::span<const double> samples) {
  SampleStats st;
  st.n = samples.size();
  if (st.n == 0) return st;
  double sum = 0.0;
  for (double x : samples) sum += x;
  st.mean = sum / static_cast<double>(st.n);
  if (st.n < 2) return st;

  double ss = 0.0;
  for (double x : samples) ss += (x - st.mean) * (x - st.mean);
  st.sd = std::sqrt(ss / static_cast<double>(st.n - 1));
  st.std_error = st.sd / std::sqrt(static_cast<double>(st.n));
  if (st.mean != 0.0) {
    st.rse = st.std_error / std::abs(st.mean);
  } else {
    st.rse = st.sd == 0.0 ? 0.0 : std::nan("");
  }
  return st;
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
}

unsigned threads_from_env() {
  const char* value = std::getenv("PONSHARE_THREADS");
  if (value == nullptr) return 0;
  unsigned n = 0;
  const char* end = value + std::strlen(value);
  const auto [ptr, ec] = std::from_chars(value, end, n);
  if (ec != std::errc() || ptr != end) return 0;
  return n;
}

}  // namespace ponshare
