#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vbc/form.hpp"

namespace vbc {

// Evolutionary vector field X = sum_a X^a d/du^a, prolonged by total derivatives.
class Field {
public:
    Field() = default;
    Field(TheoryPtr th, int ghost);

    const TheoryPtr& theory() const { return th_; }
    int ghost() const { return ghost_; }
    const LocalForm& operator[](int a) const { return comp_.at(a); }
    const LocalForm& component(const std::string& name) const;
    Field& set(int a, LocalForm xa);
    Field& set(const std::string& name, LocalForm xa);
    bool isZero() const;

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(const Rational& c);
    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(const Rational& c, Field a) { return a *= c; }
    bool operator==(const Field& o) const { return ghost_ == o.ghost_ && comp_ == o.comp_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

    std::string str() const;

private:
    TheoryPtr th_;
    int ghost_ = 0;
    std::vector<LocalForm> comp_;
};

using GeneratorImage = std::function<LocalForm(Gen::Raw)>;

// Extends a map on generators to a graded derivation of the given parity
// (Koszul signs in total degree).
LocalForm derivation(const LocalForm& x, int parity, const GeneratorImage& image);

LocalForm totalDerivative(int i, const LocalForm& x);
LocalForm totalDerivative(const MultiIndex& I, const LocalForm& x);
LocalForm dH(const LocalForm& x);
LocalForm dV(const LocalForm& x);
LocalForm dTot(const LocalForm& x);

LocalForm contract(const Field& X, const LocalForm& x); // iota_X
LocalForm lie(const Field& X, const LocalForm& x);      // L_X = [iota_X, dV]
Field bracket(const Field& X, const Field& Y);

// left derivative with respect to a generator
LocalForm leftPartial(Gen::Raw g, const LocalForm& x);
// left contraction of dx^i
LocalForm horizontalContract(int i, const LocalForm& x);

LocalForm interiorEuler(const LocalForm& x); // Pi
LocalForm eulerLagrange(const LocalForm& L); // Pi dV

// action of the graded Euler field: multiplies each term by its ghost degree
LocalForm eulerGrading(const LocalForm& x);
Field eulerField(const TheoryPtr& th);  // E^a = ghd(u^a) u^a
Field radialField(const TheoryPtr& th); // R^a = u^a

} // namespace vbc
