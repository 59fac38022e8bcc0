#pragma once

#include "symctr/error.hpp"
#include "symctr/scalar.hpp"
#include "symctr/coefficient.hpp"
#include "symctr/operator.hpp"
#include "symctr/linalg.hpp"
#include "symctr/basis.hpp"
#include "symctr/structure.hpp"
#include "symctr/solver.hpp"
#include "symctr/liealg.hpp"
#include "symctr/words.hpp"
#include "symctr/abstract.hpp"
#include "symctr/projection.hpp"
#include "symctr/printer.hpp"
#include "symctr/parser.hpp"
#include "symctr/json_io.hpp"
#include "symctr/models.hpp"
