#pragma once

#include "asymptotics.hpp"
#include "crossover.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "model.hpp"
#include "quad_oracle.hpp"
#include "scan.hpp"
#include "special_functions.hpp"
