#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nact/formula.hpp"
#include "nact/prover.hpp"

namespace nact {

struct TraceCheck {
  bool ok = false;
  std::string error;  // first problem found, with the step id
  std::size_t steps_checked = 0;
};

/// Replays a closed tableau for axioms |- goal without any search. Each step
/// is checked against its premises, and every branch must end closed.
TraceCheck check_trace(const std::vector<Formula>& axioms, const Formula& goal,
                       const std::vector<TraceStep>& trace);

}  // namespace nact
