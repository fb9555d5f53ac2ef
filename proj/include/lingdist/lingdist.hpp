#pragma once

// Multi-granular linguistic distribution assessments: 2-tuple arithmetic,
// distribution algebra, lossless cross-granularity transformation, and the
// group decision pipeline built on top of them.

#include "lingdist/scale.hpp"
#include "lingdist/distribution.hpp"
#include "lingdist/hierarchy.hpp"
#include "lingdist/simplex.hpp"
#include "lingdist/decision.hpp"
#include "lingdist/io.hpp"
