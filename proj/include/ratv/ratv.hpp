#pragma once

#include "ratv/core/arena.hpp"
#include "ratv/engine.hpp"
#include "ratv/formula.hpp"
#include "ratv/io/game_file.hpp"
#include "ratv/io/witness.hpp"
#include "ratv/rational.hpp"
#include "ratv/welfare.hpp"
