#pragma once

#include <optional>
#include <random>

#include "vbc/homotopy.hpp"

namespace vbc {

struct RandomSpec {
    int terms = 3;
    int maxJetOrder = 2;
    int maxJetFactors = 2;
    std::optional<int> vfd;  // random in [0, 2] when unset
    std::optional<int> hfd;  // random in [0, n] when unset
    std::optional<int> ghd;  // rejection-sampled when set
    bool baseCoordinates = true;
    int coeffRange = 3;
};

LocalForm randomForm(const TheoryPtr& th, std::mt19937_64& rng, const RandomSpec& spec);

// components of vfd 0, hfd 0 with ghd(X^a) = ghost + ghd(u^a)
Field randomField(const TheoryPtr& th, std::mt19937_64& rng, int ghost, const RandomSpec& spec);

// cone element of partial effective degree ped: body components of hfd n - j and
// ghost degree ped + j, base form of degree ped + n + 1 when that is in range
Cone randomCone(const TheoryPtr& th, std::mt19937_64& rng, int ped, const RandomSpec& spec);

// P applied to a random top form of ghost degree g
LocalForm randomFunctional(const TheoryPtr& th, std::mt19937_64& rng, int g, const RandomSpec& spec);

// n-dimensional theory with fields of ghost degree -2..2
TheoryPtr mixedTheory(int n, int jetCap = 8);

} // namespace vbc
