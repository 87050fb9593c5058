#pragma once

#include "axioms.hpp"
#include "contraction.hpp"
#include "errors.hpp"
#include "examples.hpp"
#include "generator.hpp"
#include "io.hpp"
#include "picard.hpp"
#include "pproperty.hpp"
#include "probe.hpp"
#include "rational.hpp"
#include "reference_instances.hpp"
#include "self_map.hpp"
#include "space.hpp"
#include "stability.hpp"
#include "transform.hpp"
