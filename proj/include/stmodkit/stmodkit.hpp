#pragma once

// Umbrella header: the whole toolkit.

#include "stmodkit/acceptance.hpp"
#include "stmodkit/algebra.hpp"
#include "stmodkit/cohomology.hpp"
#include "stmodkit/decompose.hpp"
#include "stmodkit/diagram.hpp"
#include "stmodkit/errors.hpp"
#include "stmodkit/field.hpp"
#include "stmodkit/filtration.hpp"
#include "stmodkit/fixtures.hpp"
#include "stmodkit/io.hpp"
#include "stmodkit/matrix.hpp"
#include "stmodkit/module.hpp"
#include "stmodkit/oracle.hpp"
#include "stmodkit/projectives.hpp"
#include "stmodkit/random.hpp"
#include "stmodkit/subspace.hpp"
