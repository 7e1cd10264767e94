#pragma once

#include <string>
#include <vector>

#include "vbc/calculus.hpp"

namespace vbc {

// A field theory given by its anchor 2-form and homological vector field.
struct Model {
    std::string name;
    TheoryPtr theory;
    LocalForm omega;
    Field Q;
};

// n = 1: fields x, x+; omega = dV x+ dV x dt, Q^{x+} = x_tt
Model particle(int jetCap = 8);
// n = 2: fields phi, phi+; Q^{phi+} = phi_xx + phi_yy
Model freeScalar2(int jetCap = 8);
// n = 3 abelian Chern-Simons in BV form
Model chernSimons3(int jetCap = 8);

// negative controls
Model nonVariationalParticle(int jetCap = 8); // Q^{x+} = x_t
Model nonClosedParticle(int jetCap = 8);      // omega = x_t dV x+ dV x dt

std::vector<Model> builtinModels();
std::vector<Model> brokenModels();

} // namespace vbc
