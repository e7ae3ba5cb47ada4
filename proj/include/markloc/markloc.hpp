// markloc - overlapping scatter mark localization
// Requirements: C++20

#pragma once

#include "annealer.hpp"
#include "assignment.hpp"
#include "baseline.hpp"
#include "benchgen.hpp"
#include "clustering.hpp"
#include "geometry.hpp"
#include "image.hpp"
#include "locator.hpp"
#include "metric.hpp"
#include "objective.hpp"
#include "raster.hpp"
#include "revis.hpp"
