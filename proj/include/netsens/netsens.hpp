#pragma once

#include "netsens/centrality.hpp"
#include "netsens/compare.hpp"
#include "netsens/csv.hpp"
#include "netsens/edge_list.hpp"
#include "netsens/error.hpp"
#include "netsens/generators.hpp"
#include "netsens/graph.hpp"
#include "netsens/harness.hpp"
#include "netsens/hyperloglog.hpp"
#include "netsens/neighborhood.hpp"
#include "netsens/parallel.hpp"
#include "netsens/removal.hpp"
#include "netsens/rng.hpp"
