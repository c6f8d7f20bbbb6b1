#pragma once

#include "loewner/conformal_maps.hpp"
#include "loewner/driving.hpp"
#include "loewner/errors.hpp"
#include "loewner/half_plane_point.hpp"
#include "loewner/hull_sim.hpp"
#include "loewner/knk_oracle.hpp"
#include "loewner/parallel.hpp"
#include "loewner/serialization.hpp"
