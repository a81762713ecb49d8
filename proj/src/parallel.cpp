#include "opschur/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace opschur {

namespace {
std::atomic<int> g_threads{1};

template <typename Init, typename Accum>
std::vector<double> per_chunk(std::size_t n, const std::function<double(std::size_t)>& fn,
                              Init init, Accum accum) {
  const std::size_t nchunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(nchunks, init);
  auto run_chunk = [&](std::size_t c) {
    const std::size_t lo = c * kChunk;
    const std::size_t hi = std::min(n, lo + kChunk);
    double acc = init;
    for (std::size_t i = lo; i < hi; ++i) acc = accum(acc, fn(i));
    partial[c] = acc;
  };
  const int nt = std::min<int>(g_threads.load(), static_cast<int>(nchunks));
  if (nt <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int w = 0; w < nt; ++w)
      pool.emplace_back([&] {
        for (;;) {
          std::size_t c = cursor.fetch_add(1);
          if (c >= nchunks) return;
          run_chunk(c);
        }
      });
    for (auto& th : pool) th.join();
  }
  return partial;
}
}  // namespace

void set_worker_threads(int n) { g_threads.store(n < 1 ? 1 : n); }
int worker_threads() { return g_threads.load(); }

double chunked_sum(std::size_t n, const std::function<double(std::size_t)>& fn) {
  if (n == 0) return 0.0;
  auto partial = per_chunk(n, fn, 0.0, [](double a, double b) { return a + b; });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace opschur
