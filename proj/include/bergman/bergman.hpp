#pragma once

#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/geometry.hpp"
#include "bergman/polynomial.hpp"
#include "bergman/kernel.hpp"
#include "bergman/green.hpp"
#include "bergman/radial.hpp"
#include "bergman/projection.hpp"
#include "bergman/boundary.hpp"
#include "bergman/toeplitz.hpp"
#include "bergman/report.hpp"
#include "bergman/config.hpp"
#include "bergman/runner.hpp"
