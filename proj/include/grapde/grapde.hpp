#pragma once

#include "grapde/numeric.hpp"
#include "grapde/graph.hpp"
#include "grapde/calculus.hpp"
#include "grapde/sobolev.hpp"
#include "grapde/expr.hpp"
#include "grapde/nonlinearity.hpp"
#include "grapde/energy.hpp"
#include "grapde/hypotheses.hpp"
#include "grapde/optim.hpp"
#include "grapde/solvers.hpp"
#include "grapde/continuation.hpp"
#include "grapde/scalar.hpp"
#include "grapde/io.hpp"
