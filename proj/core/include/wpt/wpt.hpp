#pragma once

#include "wpt/analytic.hpp"
#include "wpt/circuit.hpp"
#include "wpt/error.hpp"
#include "wpt/geometry.hpp"
#include "wpt/matrix.hpp"
#include "wpt/measurement.hpp"
#include "wpt/sweep.hpp"
