#pragma once

#include "arg_analysis.hpp"
#include "braid_word.hpp"
#include "cactus.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "covering.hpp"
#include "error.hpp"
#include "fiber_mesh.hpp"
#include "io.hpp"
#include "mixed_poly.hpp"
#include "parallel.hpp"
#include "permutation.hpp"
#include "poly_loop.hpp"
#include "roots.hpp"
#include "square_diagram.hpp"
#include "strands.hpp"
#include "trig_curve.hpp"
#include "twist_realization.hpp"
