#pragma once

// Umbrella header for the algorithmic core (no JSON or command-line parts).

#include "continua/coloring.hpp"
#include "continua/cover.hpp"
#include "continua/error.hpp"
#include "continua/graph.hpp"
#include "continua/hat.hpp"
#include "continua/models.hpp"
#include "continua/pl_map.hpp"
#include "continua/rational.hpp"
#include "continua/refinement.hpp"
#include "continua/surgery.hpp"
