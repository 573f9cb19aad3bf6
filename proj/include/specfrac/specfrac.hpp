// Umbrella header: the whole solver and verification toolkit.

#pragma once

#include "specfrac/domain.hpp"
#include "specfrac/energy.hpp"
#include "specfrac/field.hpp"
#include "specfrac/hypotheses.hpp"
#include "specfrac/io.hpp"
#include "specfrac/nonlinearity.hpp"
#include "specfrac/operators.hpp"
#include "specfrac/params.hpp"
#include "specfrac/solvers.hpp"
#include "specfrac/transform.hpp"
#include "specfrac/verify.hpp"
