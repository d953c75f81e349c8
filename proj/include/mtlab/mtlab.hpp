#pragma once

#include "bench.hpp"
#include "core.hpp"
#include "drivers.hpp"
#include "oracles.hpp"
#include "othello.hpp"
#include "position_set.hpp"
#include "search.hpp"
#include "synthetic.hpp"
#include "ttable.hpp"
#include "verify.hpp"
