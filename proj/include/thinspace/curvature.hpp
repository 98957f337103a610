#pragma once

#include "thinspace/l14.hpp"
#include "thinspace/manifold.hpp"
#include "thinspace/vitali.hpp"
