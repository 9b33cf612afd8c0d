// units.hpp: conversion between laboratory frequencies and temperatures

#pragma once

namespace tisbm::units {

inline constexpr double kHbar = 1.054571817e-34;     // J s
inline constexpr double kBoltzmann = 1.380649e-23;   // J / K

/// Temperature (K) whose thermal energy equals hbar * 2 pi * frequency_hz.
double kelvin_from_hz(double frequency_hz);

/// Critical temperature in kelvin for a coupling gamma/2pi and cutoff omega_c/2pi given in Hz.
double critical_temperature_kelvin(double gamma_hz, double alpha, double cutoff_hz);

}  // namespace tisbm::units
