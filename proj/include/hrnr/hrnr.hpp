#pragma once

#include "hrnr/dilation.hpp"
#include "hrnr/dim.hpp"
#include "hrnr/error.hpp"
#include "hrnr/geometry.hpp"
#include "hrnr/linalg.hpp"
#include "hrnr/models.hpp"
#include "hrnr/numerical_range.hpp"
#include "hrnr/spectral_measure.hpp"
