#pragma once

#include "steer/channels.hpp"
#include "steer/common.hpp"
#include "steer/ellipsoid.hpp"
#include "steer/experiments.hpp"
#include "steer/families.hpp"
#include "steer/io.hpp"
#include "steer/monogamy.hpp"
#include "steer/qcore.hpp"
#include "steer/rng.hpp"
