#pragma once

// Umbrella header: the whole modeling stack in one include.

#include "ent/arch.hpp"        // IWYU pragma: export
#include "ent/cost_model.hpp"  // IWYU pragma: export
#include "ent/encoding.hpp"    // IWYU pragma: export
#include "ent/errors.hpp"      // IWYU pragma: export
#include "ent/multiplier.hpp"  // IWYU pragma: export
#include "ent/simulator.hpp"   // IWYU pragma: export
#include "ent/soc.hpp"         // IWYU pragma: export
