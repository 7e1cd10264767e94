#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vbc/linfty.hpp"
#include "vbc/models.hpp"

namespace vbc {

struct CheckEntry {
    std::string name;
    bool pass = false;
    LocalForm residual; // empty when pass, or when the check is not form valued
    std::string detail;
    double millis = 0;
};

struct Report {
    std::string subject;
    std::vector<CheckEntry> entries;

    bool ok() const;
    // records a form-valued identity; passes iff the residual is zero
    CheckEntry& residual(std::string name, LocalForm r, std::string detail = {});
    CheckEntry& flag(std::string name, bool pass, std::string detail = {});
    void append(const Report& other);
    const CheckEntry* firstFailure() const;
};

// Parsed theory: (omega, Q) plus optional user presentation (L, theta).
struct TheorySpec {
    std::string name;
    TheoryPtr theory;
    LocalForm omega;
    Field Q;
    std::optional<LocalForm> L;
    std::optional<LocalForm> theta;
    // declared constant pairing d_L omega / d du^b = sum_a M[b][a] du^a vol
    std::optional<std::vector<std::vector<Rational>>> pairing;

    static TheorySpec fromModel(const Model& m);
};

Report checkCompatibility(const TheorySpec& spec);

struct HamiltonianTriple {
    LocalForm L;
    Field Q;
    LocalForm theta;
    SymplecticDevelopment ambient;

    // iota_Q omega - dV L - dH theta
    LocalForm residual() const;
    bool certified() const { return ambient.certified() && residual().isZero(); }
};

// theta = h_V omega, L = h_V(iota_Q omega - dH theta)
HamiltonianTriple canonicalTriple(const SymplecticDevelopment& dev);
// (2) => (1): (dH - L_Q) omega recomputed from a triple with theta = h_V omega
LocalForm descentFromTriple(const HamiltonianTriple& t);

// triple for a spec: canonical, or the user's presentation when supplied
HamiltonianTriple presentationTriple(const TheorySpec& spec, const SymplecticDevelopment& dev);

// 1/2 iota_Q iota_Q omega - dH L
LocalForm masterResidual(const HamiltonianTriple& t);
Report masterEquation(const HamiltonianTriple& t);

struct NoetherTotal {
    LocalForm Delta;  // L - iota_Q theta
    LocalForm LL;     // L + L_E Delta
};
NoetherTotal noetherAndTotal(const HamiltonianTriple& t);
Report noetherReport(const HamiltonianTriple& t);

// sets every generator of a field with nonzero ghost degree to zero
LocalForm collapseToGhostZero(const LocalForm& x);
// dV L^0 - Pi dV L^0 + dH theta^1 after collapsing to ghost degree zero
LocalForm lepageResidual(const HamiltonianTriple& t);

struct StandardMC {
    Cone value;         // s = l - 1/2 H~{l,l}^S
    Cone lagrangian;    // l = (0, LL)
    Cone mcResidual;    // S-tower MC residual
    LocalForm projectionResidual; // P s - P(0, L)
};
StandardMC standardMC(const HamiltonianTriple& t, const HamiltonianStructure& H);

// T_f: (L + dH f, Q, theta + dV f)
HamiltonianTriple redefineTriple(const HamiltonianTriple& t, const LocalForm& f);

struct Redefinition {
    HamiltonianTriple triple;
    SymplecticDevelopment development;
};
Redefinition liouvilleRedefine(const HamiltonianTriple& t, const LocalForm& eta);
Redefinition globalRedefine(const HamiltonianTriple& t, const LocalForm& beta);
// sum_k (H~ dV)^k beta with H~ the descent homotopy
LocalForm globalPotential(const Field& Q, const LocalForm& beta);

// (F, gamma, K) with L2 - L1 = dH F + K and theta2 - theta1 = dV F + dH gamma
struct Classification {
    LocalForm F, gamma, K;
    LocalForm lagrangianResidual, thetaResidual;
    bool ok() const { return lagrangianResidual.isZero() && thetaResidual.isZero(); }
};
Classification classify(const HamiltonianTriple& a, const HamiltonianTriple& b);

// e^{iota_Q} = id + iota_Q + 1/2 iota_Q^2 on forms of vertical degree <= 2
LocalForm expContract(const Field& Q, const LocalForm& x, int sign = 1);

struct MomentumMap {
    LocalForm lambda; // L + theta
};
MomentumMap momentumMap(const HamiltonianTriple& t);
Report checkMultisymplectic(const HamiltonianTriple& t);

} // namespace vbc
