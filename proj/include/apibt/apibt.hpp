#pragma once

#include "apibt/anytime.hpp"
#include "apibt/benchmarks.hpp"
#include "apibt/deadline.hpp"
#include "apibt/djag.hpp"
#include "apibt/grid.hpp"
#include "apibt/heuristics.hpp"
#include "apibt/instance.hpp"
#include "apibt/lacam.hpp"
#include "apibt/oracle.hpp"
#include "apibt/pibt.hpp"
#include "apibt/priorities.hpp"
#include "apibt/runner.hpp"
#include "apibt/validate.hpp"
