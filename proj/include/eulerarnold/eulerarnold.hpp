#pragma once

// Umbrella header: geodesic flow of right-invariant Fourier-multiplier
// metrics on Diff(S^1), in Eulerian and Lagrangian coordinates.

#include "eulerarnold/algebra.hpp"
#include "eulerarnold/config.hpp"
#include "eulerarnold/diffeo.hpp"
#include "eulerarnold/field.hpp"
#include "eulerarnold/flows.hpp"
#include "eulerarnold/identities.hpp"
#include "eulerarnold/inertia.hpp"
#include "eulerarnold/io.hpp"
#include "eulerarnold/random.hpp"
#include "eulerarnold/scenario.hpp"
