#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace persistor {

// Error taxonomy, mapped to process exit codes by the CLI:
//   input_error        -> 2  (malformed files, bad arguments)
//   precondition_error -> 3  (mathematically invalid input: duplicate points,
//                             non-generic vertex values, level out of range)
//   internal_error     -> 4  (failed postcondition or inconsistent counts; a bug)
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct internal_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sentinels for unbounded interval ends (step and critical-index coordinates).
inline constexpr int k_plus_inf = std::numeric_limits<int>::max();
inline constexpr int k_minus_inf = std::numeric_limits<int>::min();

inline bool is_finite_end(int e) { return e != k_plus_inf && e != k_minus_inf; }

} // namespace persistor
