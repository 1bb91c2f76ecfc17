#pragma once

#include <string>
#include <vector>

#include "gbpd/field.hpp"

namespace gbpd {

struct PropertyResult {
    std::string name;
    bool pass = false;
    double value = 0; // worst error observed
    double tol = 0;
};

/// Runs the module invariants on one model: algebraic identities of the
/// complex, Möbius machinery, interaction decomposition, energy functionals
/// and oracle self-consistency. Deterministic given the seed.
std::vector<PropertyResult> run_property_suite(const Complex& C, const Field& h,
                                               unsigned seed = 17, int n_random = 20);

} // namespace gbpd
