#pragma once

// Umbrella header for the vdm library.

#include "vdm/errors.hpp"
#include "vdm/matrix.hpp"
#include "vdm/core.hpp"
#include "vdm/hermite.hpp"
#include "vdm/optimizer.hpp"
#include "vdm/limits.hpp"
#include "vdm/sphere_viz.hpp"
#include "vdm/io.hpp"
