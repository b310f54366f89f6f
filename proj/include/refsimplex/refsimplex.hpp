#pragma once

// Umbrella header.
#include "integer.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "weight_vector.hpp"
#include "simplex.hpp"
#include "ehrhart.hpp"
#include "idp.hpp"
#include "weights.hpp"
#include "family.hpp"
#include "lefschetz.hpp"
#include "serialize.hpp"
#include "search.hpp"
