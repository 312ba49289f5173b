#pragma once

#include "kdgf/certify.hpp"
#include "kdgf/decay_fit.hpp"
#include "kdgf/dgf.hpp"
#include "kdgf/equilibrium.hpp"
#include "kdgf/error.hpp"
#include "kdgf/integrate.hpp"
#include "kdgf/kuramoto.hpp"
#include "kdgf/phase.hpp"
#include "kdgf/problems.hpp"
#include "kdgf/summation.hpp"
#include "kdgf/thresholds.hpp"
