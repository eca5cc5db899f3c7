#pragma once

#include "hopsets/asp.hpp"
#include "hopsets/dimacs.hpp"
#include "hopsets/errors.hpp"
#include "hopsets/explore.hpp"
#include "hopsets/generators.hpp"
#include "hopsets/graph.hpp"
#include "hopsets/hopset.hpp"
#include "hopsets/hopset_io.hpp"
#include "hopsets/parallel.hpp"
#include "hopsets/rng.hpp"
#include "hopsets/scale_reduction.hpp"
#include "hopsets/schedule.hpp"
#include "hopsets/single_scale.hpp"
#include "hopsets/verify.hpp"
#include "hopsets/weight.hpp"
