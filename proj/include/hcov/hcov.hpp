#pragma once

#include "hcov/driver.hpp"
#include "hcov/engine.hpp"
#include "hcov/history.hpp"
#include "hcov/model.hpp"
#include "hcov/msr/config.hpp"
#include "hcov/msr/constraint.hpp"
#include "hcov/msr/monadize.hpp"
#include "hcov/msr/rules.hpp"
#include "hcov/oracle.hpp"
#include "hcov/petri.hpp"
#include "hcov/wqo.hpp"
