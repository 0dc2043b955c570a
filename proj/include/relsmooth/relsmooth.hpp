#pragma once

#include "relsmooth/algebra.hpp"
#include "relsmooth/dsl.hpp"
#include "relsmooth/engine.hpp"
#include "relsmooth/extnat.hpp"
#include "relsmooth/fd.hpp"
#include "relsmooth/field.hpp"
#include "relsmooth/groebner.hpp"
#include "relsmooth/linalg.hpp"
#include "relsmooth/monomial.hpp"
#include "relsmooth/poly.hpp"
#include "relsmooth/relgldim.hpp"
#include "relsmooth/smooth.hpp"
