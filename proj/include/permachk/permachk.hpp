#pragma once

#include "permachk/checker.hpp"
#include "permachk/common.hpp"
#include "permachk/config.hpp"
#include "permachk/fixed_points.hpp"
#include "permachk/lyapunov.hpp"
#include "permachk/model.hpp"
#include "permachk/orbit.hpp"
#include "permachk/quadrature.hpp"
#include "permachk/report.hpp"
#include "permachk/verifier.hpp"
