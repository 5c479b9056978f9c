#pragma once

#include "ovl/sampling.hpp"
#include "ovl/empirical.hpp"
#include "ovl/impurity.hpp"
#include "ovl/estimator.hpp"
#include "ovl/oracle.hpp"
#include "ovl/experiments.hpp"
