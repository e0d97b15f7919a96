#pragma once

#include "irc/bench.hpp"
#include "irc/common.hpp"
#include "irc/datagen.hpp"
#include "irc/fenwick_model.hpp"
#include "irc/linear_model.hpp"
#include "irc/range_coder.hpp"
#include "irc/search.hpp"
#include "irc/selftest.hpp"
#include "irc/stream.hpp"
