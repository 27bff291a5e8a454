#pragma once

// Umbrella header: the Isbell nucleus of a real matrix, its projective
// metric geometry, witness-cell decomposition, event loci, order chambers,
// and concept-lattice towers.

#include "isbell/chambers.hpp"
#include "isbell/chart.hpp"
#include "isbell/errors.hpp"
#include "isbell/events.hpp"
#include "isbell/extreal.hpp"
#include "isbell/fca.hpp"
#include "isbell/gap.hpp"
#include "isbell/io.hpp"
#include "isbell/linfeas.hpp"
#include "isbell/metric.hpp"
#include "isbell/polyhedra.hpp"
#include "isbell/profunctor.hpp"
#include "isbell/rational.hpp"
