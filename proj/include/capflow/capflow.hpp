#pragma once

#include "connections.hpp"
#include "entropy.hpp"
#include "errors.hpp"
#include "flux_model.hpp"
#include "grid.hpp"
#include "hyperbolic.hpp"
#include "norms.hpp"
#include "parabolic.hpp"
#include "polynomial.hpp"
#include "riemann_exact.hpp"
#include "steady_states.hpp"
