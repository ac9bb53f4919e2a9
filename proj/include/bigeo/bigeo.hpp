#pragma once

// Umbrella header for the whole library.

#include "bigeo/applications.hpp"
#include "bigeo/derivative.hpp"
#include "bigeo/difference.hpp"
#include "bigeo/errors.hpp"
#include "bigeo/expr.hpp"
#include "bigeo/gfunction.hpp"
#include "bigeo/greal.hpp"
#include "bigeo/table.hpp"
#include "bigeo/taylor.hpp"
#include "bigeo/trig.hpp"
