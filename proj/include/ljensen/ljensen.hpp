#pragma once

// Umbrella header: central derivatives, Taylor coefficients and Jensen
// polynomials of completed L-functions, their saddle-point asymptotics, and
// certified hyperbolicity scans.

#include "ljensen/asymptotics.hpp"
#include "ljensen/bigreal.hpp"
#include "ljensen/central.hpp"
#include "ljensen/combinatorics.hpp"
#include "ljensen/error.hpp"
#include "ljensen/eta.hpp"
#include "ljensen/gamma_cache.hpp"
#include "ljensen/kronecker.hpp"
#include "ljensen/lfamily.hpp"
#include "ljensen/polynomial.hpp"
#include "ljensen/precision.hpp"
#include "ljensen/quadform.hpp"
#include "ljensen/quadrature.hpp"
#include "ljensen/saddle.hpp"
#include "ljensen/scan.hpp"
#include "ljensen/series.hpp"
#include "ljensen/sturm.hpp"
#include "ljensen/theta.hpp"
