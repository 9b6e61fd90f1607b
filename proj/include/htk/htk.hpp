#pragma once

#include "binary_forms.hpp"
#include "classify.hpp"
#include "covariants.hpp"
#include "factorization.hpp"
#include "harmonic.hpp"
#include "random.hpp"
#include "reconstruction.hpp"
#include "tensor_core.hpp"
