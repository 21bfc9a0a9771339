#ifndef BSKEL_BSKEL_HPP
#define BSKEL_BSKEL_HPP

#include "bskel/analysis.hpp"
#include "bskel/delaunay.hpp"
#include "bskel/discrimination.hpp"
#include "bskel/error.hpp"
#include "bskel/generators.hpp"
#include "bskel/geometry.hpp"
#include "bskel/io.hpp"
#include "bskel/kd_tree.hpp"
#include "bskel/point_set.hpp"
#include "bskel/predicates.hpp"
#include "bskel/skeleton.hpp"
#include "bskel/stability.hpp"

#endif
