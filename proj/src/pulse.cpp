#include "echomem/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace echomem {

double Pulse::energy() const {
    double e = 0.0;
    for (const auto& a : envelope) e += std::norm(a);
    return e * grid.dt;
}

double Spectrum::energy() const {
    double e = 0.0;
    for (const auto& s : values) e += std::norm(s);
    return e * grid.domega();
}

Pulse gaussian_pulse(double duration, double amplitude,
                     const num::TransformConvention& grid) {
    if (!(duration > 0.0))
        throw std::invalid_argument("gaussian_pulse: duration must be > 0");
    const double span = grid.n * grid.dt;
    if (span < 8.0 * duration)
        throw std::invalid_argument(
            "gaussian_pulse: grid span below 8x the pulse duration");
    Pulse p;
    p.grid = grid;
    p.envelope.resize(grid.n);
    for (int k = 0; k < grid.n; ++k) {
        const double t = grid.time(k);
        p.envelope[k] = amplitude * std::exp(-t * t / (2.0 * duration * duration));
    }
    return p;
}

Spectrum spectrum_of(const Pulse& p) {
    return {p.grid, num::forward_transform(p.envelope, p.grid.dt)};
}

Pulse pulse_from_spectrum(const Spectrum& s) {
    Pulse p;
    p.grid = s.grid;
    p.envelope = num::inverse_transform(s.values, s.grid.dt);
    return p;
}

double spectral_width_hwem(const Pulse& p) {
    const Spectrum s = spectrum_of(p);
    const int n = s.grid.n;
    std::vector<double> power(n);
    double peak = 0.0;
    int ipk = 0;
    for (int j = 0; j < n; ++j) {
        power[j] = std::norm(s.values[j]);
        if (power[j] > peak) {
            peak = power[j];
            ipk = j;
        }
    }
    if (peak <= 0.0) throw std::runtime_error("spectral_width_hwem: empty spectrum");
    // Lobe count: local maxima above half the peak signal ambiguity.
    int lobes = 0;
    for (int j = 1; j + 1 < n; ++j)
        if (power[j] > power[j - 1] && power[j] > power[j + 1] &&
            power[j] > 0.5 * peak)
            ++lobes;
    if (lobes > 1)
        throw std::runtime_error("spectral_width_hwem: multi-lobed spectrum");
    const double target = peak * std::exp(-1.0);
    auto cross = [&](int dir) {
        for (int j = ipk; j + dir >= 0 && j + dir < n; j += dir) {
            if (power[j + dir] <= target) {
                const double w0 = s.grid.omega(j), w1 = s.grid.omega(j + dir);
                const double f = (power[j] - target) / (power[j] - power[j + dir]);
                return w0 + f * (w1 - w0);
            }
        }
        throw std::runtime_error("spectral_width_hwem: no e^-1 crossing on grid");
    };
    return 0.5 * (cross(+1) - cross(-1));
}

Pulse time_reverse(const Pulse& p) {
    Pulse r = p;
    std::reverse(r.envelope.begin(), r.envelope.end());
    return r;
}

double energy_efficiency(const Pulse& input, const Pulse& echo) {
    const double ein = input.energy();
    if (!(ein > 0.0))
        throw std::invalid_argument("energy_efficiency: zero-energy input");
    return echo.energy() / ein;
}

double rms_duration(const Pulse& p) {
    double w = 0.0, m1 = 0.0, m2 = 0.0;
    for (int k = 0; k < p.grid.n; ++k) {
        const double t = p.time(k);
        const double q = std::norm(p.envelope[k]);
        w += q;
        m1 += q * t;
        m2 += q * t * t;
    }
    if (!(w > 0.0)) throw std::invalid_argument("rms_duration: empty pulse");
    const double mean = m1 / w;
    return std::sqrt(std::max(0.0, m2 / w - mean * mean));
}

void write_pulse_csv(std::ostream& os, const Pulse& p) {
    os << "t,re,im\n";
    char buf[96];
    for (int k = 0; k < p.grid.n; ++k) {
        std::snprintf(buf, sizeof(buf), "%.16e,%.16e,%.16e\n", p.time(k),
                      p.envelope[k].real(), p.envelope[k].imag());
        os << buf;
    }
}

Pulse read_pulse_csv(std::istream& is) {
    std::vector<double> t;
    num::cvector env;
    std::string row;
    bool header_seen = false;
    while (std::getline(is, row)) {
        if (row.empty() || row[0] == '#') continue;
        if (!header_seen && row.rfind("t,", 0) == 0) {
            header_seen = true;
            continue;
        }
        std::istringstream ls(row);
        double tv, re, im;
        char c1, c2;
        if (!(ls >> tv >> c1 >> re >> c2 >> im))
            throw std::runtime_error("read_pulse_csv: malformed row: " + row);
        t.push_back(tv);
        env.emplace_back(re, im);
    }
    if (t.size() < 2) throw std::runtime_error("read_pulse_csv: too few rows");
    Pulse p;
    p.grid.n = static_cast<int>(t.size());
    p.grid.dt = t[1] - t[0];
    p.envelope = std::move(env);
    return p;
}

} // namespace echomem
