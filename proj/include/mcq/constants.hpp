#pragma once

namespace mcq {

// Global unit convention: energy in meV, time in ps, field in tesla.
inline constexpr double hbar = 0.6582119569;       // meV ps
inline constexpr double k_boltzmann = 0.08617333;  // meV / K
inline constexpr double pi = 3.14159265358979323846;

// SI conversions, used only at the decoherence-module boundary.
inline constexpr double mev_to_joule = 1.602176634e-22;
inline constexpr double hbar_si = hbar * mev_to_joule * 1e-12;  // J s

}  // namespace mcq
