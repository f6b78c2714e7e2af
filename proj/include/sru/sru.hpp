#pragma once

#include "sru/dynamics.hpp"
#include "sru/error.hpp"
#include "sru/fft.hpp"
#include "sru/finite.hpp"
#include "sru/grid.hpp"
#include "sru/moments.hpp"
#include "sru/random.hpp"
#include "sru/states.hpp"
#include "sru/sweep.hpp"
#include "sru/uncertainty.hpp"
