#pragma once

#include "vortexcaps/caps.hpp"
#include "vortexcaps/continuation.hpp"
#include "vortexcaps/contour.hpp"
#include "vortexcaps/errors.hpp"
#include "vortexcaps/evolution.hpp"
#include "vortexcaps/fourier.hpp"
#include "vortexcaps/functional.hpp"
#include "vortexcaps/geometry.hpp"
#include "vortexcaps/quadrature.hpp"
#include "vortexcaps/spectral.hpp"
