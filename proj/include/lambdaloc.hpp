#pragma once

#include "lambdaloc/bloch.hpp"
#include "lambdaloc/errors.hpp"
#include "lambdaloc/feasibility.hpp"
#include "lambdaloc/fields.hpp"
#include "lambdaloc/localization.hpp"
#include "lambdaloc/noise.hpp"
#include "lambdaloc/units.hpp"
