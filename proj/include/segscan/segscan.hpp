#pragma once

#include "segscan/cost.hpp"
#include "segscan/error.hpp"
#include "segscan/evaluation.hpp"
#include "segscan/generators.hpp"
#include "segscan/random.hpp"
#include "segscan/search.hpp"
#include "segscan/signal.hpp"
