#pragma once

#include "spectral_bounds/error.hpp"
#include "spectral_bounds/geometry.hpp"
#include "spectral_bounds/problem.hpp"
#include "spectral_bounds/extremal.hpp"
#include "spectral_bounds/bounds.hpp"
#include "spectral_bounds/spectra.hpp"
#include "spectral_bounds/io.hpp"
