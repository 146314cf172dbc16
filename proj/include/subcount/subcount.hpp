#pragma once

#include "subcount/count.hpp"
#include "subcount/counting.hpp"
#include "subcount/degrees.hpp"
#include "subcount/error.hpp"
#include "subcount/estimator.hpp"
#include "subcount/graph.hpp"
#include "subcount/pattern.hpp"
#include "subcount/report.hpp"
#include "subcount/run.hpp"
#include "subcount/sampling.hpp"
#include "subcount/search.hpp"
#include "subcount/verify.hpp"
