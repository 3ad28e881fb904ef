#pragma once

#include "tilecraft/algebra.hpp"
#include "tilecraft/balanced.hpp"
#include "tilecraft/error.hpp"
#include "tilecraft/grid.hpp"
#include "tilecraft/json_io.hpp"
#include "tilecraft/poly_text.hpp"
#include "tilecraft/sft.hpp"
