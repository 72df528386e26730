#pragma once

#include "rcohull/approx.hpp"
#include "rcohull/envelope.hpp"
#include "rcohull/error.hpp"
#include "rcohull/hull.hpp"
#include "rcohull/laminate.hpp"
#include "rcohull/mat2.hpp"
#include "rcohull/sampling.hpp"
