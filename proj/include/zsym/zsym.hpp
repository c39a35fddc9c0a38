#pragma once

#include "zsym/core.hpp"
#include "zsym/ddouble.hpp"
#include "zsym/errors.hpp"
#include "zsym/evaluators.hpp"
#include "zsym/export.hpp"
#include "zsym/parallel.hpp"
#include "zsym/steps.hpp"
#include "zsym/symmetry.hpp"
#include "zsym/zeros.hpp"
