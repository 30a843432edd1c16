#pragma once

// Umbrella header for the whole library.

#include "loci/algorithm.hpp"
#include "loci/ci_set.hpp"
#include "loci/dsep.hpp"
#include "loci/experiment.hpp"
#include "loci/faithful.hpp"
#include "loci/graph.hpp"
#include "loci/io.hpp"
#include "loci/meek.hpp"
