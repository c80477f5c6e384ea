#ifndef CTMHD_COMMON_HPP_
#define CTMHD_COMMON_HPP_

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ctmhd {

//! Configuration / input errors (CLI exit code 2).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

//! Numerical aborts: unphysical states, stencil underflow, ... (CLI exit code 3).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

inline int env_thread_count() {
  const char* s = std::getenv("CTMHD_THREADS");
  if (!s) return 1;
  int n = std::atoi(s);
  return n > 0 ? n : 1;
}

// Static partition over [begin,end); each index is written by exactly one
// worker, so results are bitwise independent of the thread count.
inline void parallel_for(long begin, long end, const std::function<void(long)>& body) {
  int nt = env_thread_count();
  long n = end - begin;
  if (nt <= 1 || n < 2 * nt) {
    for (long i = begin; i < end; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(nt);
  long chunk = (n + nt - 1) / nt;
  std::exception_ptr err;
  std::mutex err_mtx;
  for (int t = 0; t < nt; ++t) {
    long lo = begin + t * chunk;
    long hi = lo + chunk < end ? lo + chunk : end;
    if (lo >= hi) break;
    workers.emplace_back([lo, hi, &body, &err, &err_mtx] {
      try {
        for (long i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mtx);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace ctmhd

#endif  // CTMHD_COMMON_HPP_
