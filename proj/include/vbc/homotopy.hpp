#pragma once

#include <string>

#include "vbc/calculus.hpp"

namespace vbc {

// h_V: radial contraction divided by the fibre weight
LocalForm verticalHomotopy(const LocalForm& x);

// h_nabla on forms of vertical degree >= 1; higher-Euler-operator formula
LocalForm horizontalHomotopy(const LocalForm& x);

// h_nabla + [dH, s] with s = h_nabla D_coord h_nabla; satisfies the same contract
LocalForm shiftedHorizontalHomotopy(const LocalForm& x, int coord = 0);

// h_nabla sum_k (-dV h_nabla)^k
LocalForm perturbedHorizontalHomotopy(const LocalForm& x);

// Element (alpha, F) of the horizontal cone: alpha a base form, F a horizontal form.
struct Cone {
    LocalForm base;
    LocalForm body;

    Cone() = default;
    Cone(LocalForm a, LocalForm f) : base(std::move(a)), body(std::move(f)) {}
    static Cone ofBody(LocalForm f) { return Cone(LocalForm(f.theory()), std::move(f)); }

    bool isZero() const { return base.isZero() && body.isZero(); }
    Cone& operator+=(const Cone& o);
    Cone& operator-=(const Cone& o);
    Cone& operator*=(const Rational& c);
    Cone operator-() const { return Cone(-base, -body); }
    friend Cone operator+(Cone a, const Cone& b) { return a += b; }
    friend Cone operator-(Cone a, const Cone& b) { return a -= b; }
    friend Cone operator*(const Rational& c, Cone a) { return a *= c; }
    bool operator==(const Cone& o) const { return base == o.base && body == o.body; }
    bool operator!=(const Cone& o) const { return !(*this == o); }
    std::string str() const;
};

Cone coneD(const Cone& c);     // (d alpha, -dH F + p* alpha)
Cone coneH(const Cone& c);     // (0* F, 0) + P_V h~nabla I_V
LocalForm iV(const Cone& c);   // dV F
Cone pV(const LocalForm& x);   // (0, h_V x^{vfd 1})
Cone zeroStarHomotopy(const Cone& c);
LocalForm functionalProjector(const Cone& c); // P = h_V Pi dV
Cone include(const LocalForm& F);             // i
bool isLocalFunctional(const LocalForm& F);

// Hamiltonian sign convention used by the bracket tower: D_ham = -D, H_ham = -H.
Cone hamD(const Cone& c);
Cone hamH(const Cone& c);
Cone lieCone(const Field& Q, const Cone& c);

// The cone retract perturbed by -L_Q.
class PerturbedCone {
public:
    explicit PerturbedCone(Field Q);

    const Field& Q() const { return Q_; }
    Cone ell1(const Cone& c) const;            // D_ham - L_Q
    Cone hTilde(const Cone& c) const;          // H_ham sum (L_Q H_ham)^k
    Cone iTilde(const LocalForm& F) const;     // sum (H_ham L_Q)^k i
    LocalForm gTilde(const Cone& c) const;     // P sum (L_Q H_ham)^k
    LocalForm dHam(const LocalForm& F) const;  // -P L_Q i
    int nilpotencyBound() const { return bound_; }

private:
    Field Q_;
    int bound_;
};

} // namespace vbc
