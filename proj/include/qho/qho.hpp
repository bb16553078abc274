#pragma once

#include "qho/error.hpp"
#include "qho/functions.hpp"
#include "qho/grid.hpp"
#include "qho/oracle.hpp"
#include "qho/oscillator.hpp"
#include "qho/quadrature.hpp"
#include "qho/report.hpp"
#include "qho/specfun.hpp"
#include "qho/transforms.hpp"
