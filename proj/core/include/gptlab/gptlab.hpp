#pragma once

#include "gptlab/compatibility.hpp"
#include "gptlab/mixing.hpp"
#include "gptlab/numerics.hpp"
#include "gptlab/observable.hpp"
#include "gptlab/qubit.hpp"
#include "gptlab/serialize.hpp"
#include "gptlab/theory.hpp"
#include "gptlab/uncertainty.hpp"
#include "gptlab/version.hpp"
