// Umbrella header for the weakarith workbench.
#pragma once

#include "weakarith/core.hpp"
#include "weakarith/syntax.hpp"
#include "weakarith/sexpr.hpp"
#include "weakarith/classify.hpp"
#include "weakarith/godel.hpp"
#include "weakarith/machine.hpp"
#include "weakarith/theory.hpp"
#include "weakarith/structure.hpp"
#include "weakarith/model_search.hpp"
#include "weakarith/translation.hpp"
#include "weakarith/proof.hpp"
#include "weakarith/equivalence.hpp"
#include "weakarith/experiments.hpp"
