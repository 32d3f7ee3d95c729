#ifndef ENERGY_ENERGY_HPP
#define ENERGY_ENERGY_HPP

#include "energy/rational.hpp"
#include "energy/value.hpp"
#include "energy/efun.hpp"
#include "energy/vsem.hpp"
#include "energy/matrix.hpp"
#include "energy/automaton.hpp"
#include "energy/oracle.hpp"

#endif // ENERGY_ENERGY_HPP
