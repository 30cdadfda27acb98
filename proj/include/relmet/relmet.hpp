#pragma once

// Umbrella header.

#include "relmet/caps.hpp"
#include "relmet/coarse.hpp"
#include "relmet/hyperspace.hpp"
#include "relmet/io.hpp"
#include "relmet/metric.hpp"
#include "relmet/poset.hpp"
#include "relmet/props.hpp"
#include "relmet/relset.hpp"
#include "relmet/uniform.hpp"
#include "relmet/valuation.hpp"
