#ifndef SHOTNOISE_SHOTNOISE_HPP
#define SHOTNOISE_SHOTNOISE_HPP

#include "shotnoise/analytic_laws.hpp"
#include "shotnoise/constants.hpp"
#include "shotnoise/quadrature.hpp"
#include "shotnoise/simulator.hpp"
#include "shotnoise/special_functions.hpp"
#include "shotnoise/transforms.hpp"

#endif
