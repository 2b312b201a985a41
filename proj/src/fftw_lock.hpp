#pragma once

#include <mutex>

namespace shiftsum::detail {

// FFTW planning and plan destruction are not thread-safe; executing plans is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace shiftsum::detail
