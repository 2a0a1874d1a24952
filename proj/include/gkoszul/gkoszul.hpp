#pragma once

#include "gkoszul/combinatorics.hpp"
#include "gkoszul/complex.hpp"
#include "gkoszul/engine.hpp"
#include "gkoszul/factory.hpp"
#include "gkoszul/field.hpp"
#include "gkoszul/matrix.hpp"
#include "gkoszul/module.hpp"
#include "gkoszul/multilinear.hpp"
#include "gkoszul/report.hpp"
#include "gkoszul/ring.hpp"
#include "gkoszul/scenario.hpp"
#include "gkoszul/suites.hpp"
