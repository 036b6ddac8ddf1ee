#pragma once

#include "circov/error.hpp"
#include "circov/rational.hpp"
#include "circov/circular_matrix.hpp"
#include "circov/digraph.hpp"
#include "circov/inequality.hpp"
#include "circov/lp.hpp"
#include "circov/optimize.hpp"
#include "circov/oracle.hpp"
#include "circov/separation.hpp"
#include "circov/inequalities.hpp"
