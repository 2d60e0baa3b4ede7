#pragma once

#include "cluster_result.hpp"
#include "csv.hpp"
#include "distance_matrix.hpp"
#include "dtw.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "kmedoids.hpp"
#include "pairwise.hpp"
#include "rng.hpp"
#include "runner.hpp"
#include "time_series.hpp"
#include "validation.hpp"
#include "warp_window.hpp"
