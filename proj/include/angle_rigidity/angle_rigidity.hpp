#pragma once

#include "angle_rigidity/angle_index_set.hpp"
#include "angle_rigidity/configuration.hpp"
#include "angle_rigidity/errors.hpp"
#include "angle_rigidity/formation.hpp"
#include "angle_rigidity/geometry.hpp"
#include "angle_rigidity/graph.hpp"
#include "angle_rigidity/index_sets.hpp"
#include "angle_rigidity/linalg.hpp"
#include "angle_rigidity/random.hpp"
#include "angle_rigidity/rigidity.hpp"
#include "angle_rigidity/shape.hpp"
