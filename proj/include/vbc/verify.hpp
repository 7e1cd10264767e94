#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "vbc/bv.hpp"
#include "vbc/random.hpp"

namespace vbc {

// Seeded batteries that sample inputs and collect residuals into reports.
struct VerifyOptions {
    int samples = 20;
    std::uint64_t seed = 1;
    int arity = 3;
};

enum class TowerKind { S, B };

// Hamiltonian cone elements of partial effective degree k-1 .. k+2.
class HamiltonianSampler {
public:
    HamiltonianSampler(const HamiltonianStructure& H, std::uint64_t seed, RandomSpec spec = defaultSpec());
    Cone cone();
    LocalForm functional();
    std::mt19937_64& rng() { return rng_; }
    static RandomSpec defaultSpec();

private:
    const HamiltonianStructure& H_;
    std::mt19937_64 rng_;
    RandomSpec spec_;
};

// Accumulates one report entry per identity; keeps the first nonzero residual.
class Tally {
public:
    void add(const std::string& name, const std::function<LocalForm()>& residual);
    void add(const std::string& name, const std::function<Cone()>& residual);
    void flag(const std::string& name, const std::function<bool()>& holds);
    void into(Report& r) const;

private:
    struct Slot {
        std::string name;
        LocalForm first;
        int runs = 0;
        int failures = 0;
        double millis = 0;
    };
    Slot& slot(const std::string& name);
    std::vector<Slot> slots_;
};

Report developmentReport(const SymplecticDevelopment& dev);
Report tripleReport(const HamiltonianTriple& t);
Report bracketReport(const HamiltonianStructure& H, const VerifyOptions& o);
// generalized Jacobi at every arity 1..o.arity
Report linftyReport(const HamiltonianStructure& H, TowerKind kind, const VerifyOptions& o);
// d_ham, {,}_ham on local functionals and the lax Lagrangian as MC element
Report hamAlgebraReport(const HamiltonianStructure& H, const HamiltonianTriple& t, const VerifyOptions& o);
Report maurerCartanReport(const HamiltonianStructure& H, const HamiltonianTriple& t, const VerifyOptions& o);
Report quasiInverseReport(const HamiltonianStructure& H, const HamiltonianTriple& t, const VerifyOptions& o);
Report redefinitionReport(const HamiltonianTriple& t, const VerifyOptions& o);

} // namespace vbc
