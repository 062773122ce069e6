#ifndef SSPACE_SSPACE_HPP
#define SSPACE_SSPACE_HPP

#include "sspace/error.hpp"
#include "sspace/pointset.hpp"
#include "sspace/topology.hpp"
#include "sspace/algebra.hpp"
#include "sspace/samples.hpp"
#include "sspace/space.hpp"
#include "sspace/constructions.hpp"
#include "sspace/rational.hpp"
#include "sspace/measure.hpp"
#include "sspace/lattice.hpp"

#endif  // SSPACE_SSPACE_HPP
