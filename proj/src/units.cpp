// units.cpp

#include "tisbm/units.hpp"

#include <numbers>

#include "tisbm/dynamics.hpp"

namespace tisbm::units {

double kelvin_from_hz(double frequency_hz) {
    return kHbar * 2.0 * std::numbers::pi * frequency_hz / kBoltzmann;
}

double critical_temperature_kelvin(double gamma_hz, double alpha, double cutoff_hz) {
    // The ratio gamma/omega_c is unit free, so T_c scales with gamma directly.
    const double tc_over_cutoff = critical_temperature(gamma_hz / cutoff_hz, alpha, 1.0);
    return kelvin_from_hz(tc_over_cutoff * cutoff_hz);
}

}  // namespace tisbm::units
