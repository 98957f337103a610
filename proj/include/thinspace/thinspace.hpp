#pragma once

#include "thinspace/cli.hpp"
#include "thinspace/curvature.hpp"
#include "thinspace/errors.hpp"
#include "thinspace/graphs.hpp"
#include "thinspace/io.hpp"
#include "thinspace/metric.hpp"
#include "thinspace/skeleton.hpp"
#include "thinspace/space.hpp"
#include "thinspace/thinness.hpp"
#include "thinspace/urysohn.hpp"
#include "thinspace/volume.hpp"
