#pragma once

#include <stdexcept>
#include <string>

namespace lambdacav {

// Level frequencies in units of omega3 (so omega3 == 1), linewidth as
// gamma_bar = Gamma/omega3, and the nanosecond value of one time unit 1/omega3.
struct AtomSpec {
    std::string label;
    double omega1 = 0.0;
    double omega2 = 0.0;
    double omega3 = 1.0;
    double gamma_bar = 0.0;
    double time_unit_ns = 0.0;
};

// Dimensionless couplings; the mode frequencies follow from the detunings:
//   omega_field1 = (omega3 - omega1) - delta13, omega_field2 = (omega3 - omega2) - delta23.
struct CouplingConfig {
    double mu13 = 0.0;
    double mu23 = 0.0;
    double delta13 = 0.0;
    double delta23 = 0.0;
    double omega_field1 = 0.0;
    double omega_field2 = 0.0;

    bool equal_detuning() const { return delta13 == delta23; }
};

// Throws std::invalid_argument when the ordering/positivity invariants fail.
AtomSpec validate_atom(AtomSpec spec);

// name in {"li6", "rb87"}; throws std::invalid_argument otherwise.
AtomSpec builtin_atom(const std::string& name);

// mu = gamma_bar * sqrt(intensity_ratio / 2), intensity_ratio = I/I_sat >= 0.
double rabi_from_intensity(double gamma_bar, double intensity_ratio);

// delta = n * gamma_bar; n may be negative.
double detuning_from_multiple(double gamma_bar, double n);

CouplingConfig make_coupling(const AtomSpec& atom, double mu13, double mu23,
                             double delta13, double delta23);

} // namespace lambdacav
