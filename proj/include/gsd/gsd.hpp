// gsd.hpp — umbrella include.

#pragma once

#include "gsd/emit.hpp"
#include "gsd/fock.hpp"
#include "gsd/homodyne.hpp"
#include "gsd/information.hpp"
#include "gsd/operators.hpp"
#include "gsd/quad.hpp"
#include "gsd/spectra.hpp"
#include "gsd/sweep.hpp"
