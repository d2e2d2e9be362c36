#pragma once

// Umbrella header.

#include "s2steer/dynamics.hpp"
#include "s2steer/errors.hpp"
#include "s2steer/induced_fields.hpp"
#include "s2steer/io.hpp"
#include "s2steer/larc.hpp"
#include "s2steer/linalg3.hpp"
#include "s2steer/normal_form.hpp"
#include "s2steer/planner.hpp"
#include "s2steer/simulator.hpp"
