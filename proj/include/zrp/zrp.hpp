#pragma once

#include "zrp/units.hpp"
#include "zrp/kinematics.hpp"
#include "zrp/phase_models.hpp"
#include "zrp/target_geometry.hpp"
#include "zrp/scattering_solver.hpp"
#include "zrp/observables.hpp"
#include "zrp/diffraction.hpp"
#include "zrp/grid.hpp"
#include "zrp/io.hpp"
