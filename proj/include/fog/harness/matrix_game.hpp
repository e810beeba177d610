#pragma once

#include <cstddef>

#include "fog/harness/runner.hpp"
#include "fog/harness/scenario.hpp"

namespace fog::harness {

// Two learners on the scenario's cost matrix U. The row agent pays U(i, q_t),
// the column agent pays 1 - U(p_t, j); each loss reaches its owner after a
// delay drawn uniformly from {1, ..., d_max}. Ergodic-average gaps are recorded
// at T/3, 2T/3 and T. The `latencies` and `window_latency` series carry losses.
RunMetrics run_matrix_game(const ScenarioConfig& scenario, std::size_t run);
RunMetrics run_matrix_game(const ScenarioConfig& scenario, std::size_t run,
                           const PolicyFactory& factory);

}  // namespace fog::harness
