#pragma once

#include "fuzzyprior/error.hpp"
#include "fuzzyprior/grid.hpp"
#include "fuzzyprior/fuzzy.hpp"
#include "fuzzyprior/decision.hpp"
#include "fuzzyprior/inverse.hpp"
#include "fuzzyprior/update.hpp"
#include "fuzzyprior/gallery.hpp"
#include "fuzzyprior/function_spec.hpp"
#include "fuzzyprior/io.hpp"
