#pragma once

#include "twotower/abelian.hpp"
#include "twotower/arith.hpp"
#include "twotower/catalog.hpp"
#include "twotower/classgroup.hpp"
#include "twotower/discriminant.hpp"
#include "twotower/error.hpp"
#include "twotower/primes.hpp"
#include "twotower/quadform.hpp"
#include "twotower/redei.hpp"
#include "twotower/search.hpp"
#include "twotower/splitting_lab.hpp"
#include "twotower/tower.hpp"
