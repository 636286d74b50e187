#pragma once

#include "dpdlogit/datasets.hpp"
#include "dpdlogit/distributions.hpp"
#include "dpdlogit/errors.hpp"
#include "dpdlogit/estimator.hpp"
#include "dpdlogit/hypothesis.hpp"
#include "dpdlogit/influence.hpp"
#include "dpdlogit/model.hpp"
#include "dpdlogit/random.hpp"
#include "dpdlogit/simulation.hpp"
#include "dpdlogit/types.hpp"
