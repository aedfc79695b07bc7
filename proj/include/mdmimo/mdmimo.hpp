#pragma once

#include "mdmimo/economics.hpp"
#include "mdmimo/optimizer.hpp"
#include "mdmimo/radio_model.hpp"
#include "mdmimo/scenario.hpp"
#include "mdmimo/scenario_io.hpp"
#include "mdmimo/sweep.hpp"
#include "mdmimo/transport_model.hpp"
#include "mdmimo/version.hpp"
