#pragma once

#include "kiselman/core.hpp"
#include "kiselman/enumeration.hpp"
#include "kiselman/errors.hpp"
#include "kiselman/level_metric.hpp"
#include "kiselman/morphisms.hpp"
#include "kiselman/rng.hpp"
#include "kiselman/stochastic.hpp"
#include "kiselman/text.hpp"
