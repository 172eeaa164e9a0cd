// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
#pragma once

#include "idmx/analysis.hpp"
#include "idmx/config.hpp"
#include "idmx/corpus.hpp"
#include "idmx/csv.hpp"
#include "idmx/error.hpp"
#include "idmx/histogram.hpp"
#include "idmx/matrix.hpp"
#include "idmx/measure_value.hpp"
#include "idmx/measures_distance.hpp"
#include "idmx/measures_diversity.hpp"
#include "idmx/measures_network.hpp"
#include "idmx/measures_overlap.hpp"
#include "idmx/numeric.hpp"
#include "idmx/parallel.hpp"
#include "idmx/pipeline.hpp"
#include "idmx/report.hpp"
#include "idmx/similarity.hpp"
#include "idmx/synthgen.hpp"
#include "idmx/version.hpp"
