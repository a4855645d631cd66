#pragma once

#include "specwave/errors.hpp"
#include "specwave/linalg.hpp"
#include "specwave/quadrature.hpp"
#include "specwave/regression.hpp"
#include "specwave/roots.hpp"
#include "specwave/types.hpp"
