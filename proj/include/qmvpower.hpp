#pragma once

#include "qmvpower/artifacts.hpp"
#include "qmvpower/data_io.hpp"
#include "qmvpower/errors.hpp"
#include "qmvpower/exact.hpp"
#include "qmvpower/fixtures.hpp"
#include "qmvpower/game.hpp"
#include "qmvpower/oracle.hpp"
#include "qmvpower/power.hpp"
#include "qmvpower/report.hpp"
#include "qmvpower/scenarios.hpp"
