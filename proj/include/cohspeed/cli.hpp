#pragma once

// Command-line front end. Exit codes: 0 all checks pass, 1 a check failed,
// 2 usage or configuration error.
//
//   verify <suite>   thm1 | thm2 | thm3 | coherence-lemmas | speed-identity |
//                    battery-bound | qsl
//   sweep            average distance over a time grid
//   battery          driven-qubit work time series
//   channel          channel bound audit
//   qsl              speed-limit times along an evolution
//   evolve           speeds along a Hamiltonian path
//
// Flags: --config PATH --seed N --dim N --trials N --jobs N --out PATH
//        --format csv|json --tol X. COHERENCE_SPEED_SEED is the seed fallback.

#include <iosfwd>

namespace cohspeed {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cohspeed
