#pragma once

#include "dlscatter/dalgarno_lewis.hpp"
#include "dlscatter/error_report.hpp"
#include "dlscatter/formal_series.hpp"
#include "dlscatter/potential.hpp"
#include "dlscatter/quadrature.hpp"
#include "dlscatter/reference_solver.hpp"
#include "dlscatter/square_well.hpp"
