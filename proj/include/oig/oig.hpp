#pragma once

#include "oig/adversarial.hpp"
#include "oig/bit_vector.hpp"
#include "oig/combinatorics.hpp"
#include "oig/concept_class.hpp"
#include "oig/error.hpp"
#include "oig/experiment.hpp"
#include "oig/graph.hpp"
#include "oig/keyed_mix.hpp"
#include "oig/rational.hpp"
#include "oig/rules.hpp"
#include "oig/vt_code.hpp"
