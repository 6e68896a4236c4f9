#pragma once

#include "priorglue/probability.hpp"

namespace priorglue::fixtures {

// Three agents on {a,b,c,d,e}; agents 2 and 3 disagree on {c,d}.
CredenceFamily example_1_3();
// Agents 1 and 2 of example_1_3; their common prior is (60%, 8%, 12%, 20%).
CredenceFamily example_1_4();
// Pairwise GC holds, yet no atom survives and no common prior exists.
CredenceFamily triangle();

}  // namespace priorglue::fixtures
