#ifndef ECHOMEM_PULSE_HPP
#define ECHOMEM_PULSE_HPP

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "echomem/transform.hpp"

namespace echomem {

// Complex envelope on a uniform time grid symmetric about t = 0
// (t_k = (k - (n-1)/2) * dt, n a power of two). Immutable by convention.
struct Pulse {
    num::TransformConvention grid; // n, dt
    num::cvector envelope;
    double carrier_detuning = 0.0; // offset from line center

    double time(int k) const { return grid.time(k); }
    double energy() const; // sum |a|^2 dt
};

struct Spectrum {
    num::TransformConvention grid; // same n, dt; values indexed by omega(j)
    num::cvector values;
    double energy() const; // sum |s|^2 domega
};

// Gaussian envelope a(t) = amp * exp(-t^2 / (2 dt_s^2)); duration dt_s is the
// e^-1 half-width of the intensity, so the energy-spectral HWe^-1M is 1/dt_s.
// Requires the grid span to cover at least 8 * dt_s.
Pulse gaussian_pulse(double duration, double amplitude,
                     const num::TransformConvention& grid);

Spectrum spectrum_of(const Pulse& p);
Pulse pulse_from_spectrum(const Spectrum& s);

// Half-width of |spectrum|^2 at e^-1 of its maximum, by linear interpolation.
// Throws std::runtime_error for multi-lobed spectra (ambiguous width).
double spectral_width_hwem(const Pulse& p);

// Envelope reversed about the grid center; exact index flip, energy
// preserved bit-for-bit.
Pulse time_reverse(const Pulse& p);

// Ratio of envelope energies echo/input. Throws on zero-energy input.
double energy_efficiency(const Pulse& input, const Pulse& echo);

// RMS duration of |a|^2 about its centroid; used for echo-stretch metrics.
double rms_duration(const Pulse& p);

// Two-column complex CSV (t, Re, Im) with a header row.
void write_pulse_csv(std::ostream& os, const Pulse& p);
Pulse read_pulse_csv(std::istream& is);

} // namespace echomem

#endif
