#include "lambdacav/atoms.hpp"

#include <cmath>

namespace lambdacav {

AtomSpec validate_atom(AtomSpec spec) {
    if (!(spec.omega1 < spec.omega2 && spec.omega2 < spec.omega3))
        throw std::invalid_argument("AtomSpec: level ordering omega1 < omega2 < omega3 required");
    if (spec.omega3 != 1.0)
        throw std::invalid_argument("AtomSpec: frequencies must be scaled so omega3 == 1");
    if (!(spec.gamma_bar > 0.0))
        throw std::invalid_argument("AtomSpec: gamma_bar must be positive");
    if (!(spec.time_unit_ns > 0.0))
        throw std::invalid_argument("AtomSpec: time_unit_ns must be positive");
    return spec;
}

AtomSpec builtin_atom(const std::string& name) {
    if (name == "li6")
        return validate_atom({"li6", 0.0, 1.0 / 3.0, 1.0, 0.0257, 0.698});
    if (name == "rb87")
        return validate_atom({"rb87", 0.0, 0.375, 1.0, 8.407e-4, 2.093});
    throw std::invalid_argument("builtin_atom: unknown atom '" + name + "'");
}

double rabi_from_intensity(double gamma_bar, double intensity_ratio) {
    if (intensity_ratio < 0.0)
        throw std::invalid_argument("rabi_from_intensity: intensity ratio must be nonnegative");
    return gamma_bar * std::sqrt(intensity_ratio / 2.0);
}

double detuning_from_multiple(double gamma_bar, double n) {
    return n * gamma_bar;
}

CouplingConfig make_coupling(const AtomSpec& atom, double mu13, double mu23,
                             double delta13, double delta23) {
    if (mu13 < 0.0 || mu23 < 0.0)
        throw std::invalid_argument("make_coupling: Rabi frequencies must be nonnegative");
    CouplingConfig c;
    c.mu13 = mu13;
    c.mu23 = mu23;
    c.delta13 = delta13;
    c.delta23 = delta23;
    c.omega_field1 = (atom.omega3 - atom.omega1) - delta13;
    c.omega_field2 = (atom.omega3 - atom.omega2) - delta23;
    return c;
}

} // namespace lambdacav
