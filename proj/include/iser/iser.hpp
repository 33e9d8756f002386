#pragma once

// Umbrella header for the ISER anomaly detection library.

#include "iser/baselines.hpp"
#include "iser/bench.hpp"
#include "iser/cli.hpp"
#include "iser/csv.hpp"
#include "iser/dataset.hpp"
#include "iser/detector.hpp"
#include "iser/errors.hpp"
#include "iser/grid.hpp"
#include "iser/isolation_forest.hpp"
#include "iser/metrics.hpp"
#include "iser/parallel.hpp"
#include "iser/partitioning.hpp"
#include "iser/random.hpp"
#include "iser/scoring.hpp"
#include "iser/synthdata.hpp"
