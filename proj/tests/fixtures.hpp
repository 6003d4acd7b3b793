#pragma once

#include "taut/pipeline.hpp"

namespace fixtures {

// Spaces M_{1,0}, M_{2,1}, M_{3,1} and stacks of degree 1, 2 at chi = 0, built once.
taut::Registry& small_registry();
taut::Ring& ring(int d, int chi, taut::Kind kind);

}  // namespace fixtures
