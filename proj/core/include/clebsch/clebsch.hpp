#pragma once

#include "clebsch/anti_reduction.hpp"
#include "clebsch/diagnostics.hpp"
#include "clebsch/errors.hpp"
#include "clebsch/integrators.hpp"
#include "clebsch/lie_algebra.hpp"
#include "clebsch/poisson.hpp"
#include "clebsch/systems.hpp"
#include "clebsch/types.hpp"
