#pragma once

#include "deltasys/errors.hpp"
#include "deltasys/mask.hpp"
#include "deltasys/combinatorics.hpp"
#include "deltasys/hypergraph.hpp"
#include "deltasys/io.hpp"
#include "deltasys/search.hpp"
#include "deltasys/delta_systems.hpp"
#include "deltasys/intersecting.hpp"
#include "deltasys/intersection.hpp"
#include "deltasys/constructions.hpp"
#include "deltasys/extremal.hpp"
