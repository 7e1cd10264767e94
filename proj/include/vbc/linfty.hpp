#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vbc/homotopy.hpp"

namespace vbc {

struct DevelopmentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// omega^bullet = sum_k (dV h_V h_nabla L_Q)^k omega
struct SymplecticDevelopment {
    LocalForm omega;
    int k = 0; // ghost degree of the anchor
    Field Q;
    LocalForm dVResidual;
    LocalForm descentResidual; // (dH - L_Q) omega^bullet

    const TheoryPtr& theory() const { return omega.theory(); }
    LocalForm component(int hcd) const;
    LocalForm anchor() const { return component(0); }
    bool certified() const { return dVResidual.isZero() && descentResidual.isZero(); }
};

using HorizontalHomotopy = std::function<LocalForm(const LocalForm&)>;

SymplecticDevelopment buildDevelopment(const LocalForm& omega, const Field& Q,
                                       const HorizontalHomotopy& h = horizontalHomotopy);

// h sum_k (L_Q h)^k: contracting homotopy for dH - L_Q below top degree
LocalForm descentHomotopy(const Field& Q, const LocalForm& x, const HorizontalHomotopy& h = horizontalHomotopy);

// eta with b.omega - a.omega = (dH - L_Q) eta, for two developments of one anchor
LocalForm developmentGauge(const SymplecticDevelopment& a, const SymplecticDevelopment& b);
// wraps an externally supplied development and computes its certificates
SymplecticDevelopment certifyDevelopment(const LocalForm& omegaBullet, int k, const Field& Q);

// Constant ultralocal pairing: d_L omega^0 / d du^b = sum_a M[b][a] du^a vol
struct Pairing {
    std::vector<std::vector<Rational>> M;
    static Pairing fromAnchor(const LocalForm& omega0);
};

int partialEffectiveDegree(const Cone& c); // throws std::domain_error when mixed
std::optional<int> tryPartialEffectiveDegree(const Cone& c);

// Brackets, Hamiltonian fields and the transferred tower for fixed (omega^bullet, Q).
class HamiltonianStructure {
public:
    explicit HamiltonianStructure(SymplecticDevelopment dev);

    const SymplecticDevelopment& development() const { return dev_; }
    const TheoryPtr& theory() const { return dev_.theory(); }
    const Field& Q() const { return dev_.Q; }
    int k() const { return dev_.k; }
    const PerturbedCone& perturbed() const { return pc_; }

    // shifted degree ped - k - 1 used for all Koszul signs of the tower
    int degree(const Cone& c) const;
    int degree(const LocalForm& F) const { return degree(Cone::ofBody(F)); }

    Field hamiltonianField(const Cone& c) const;
    Field hamiltonianField(const LocalForm& F) const { return hamiltonianField(Cone::ofBody(F)); }
    // Pi iota_X omega^bullet - Pi dV F
    LocalForm hamiltonianResidual(const Cone& c, const Field& X) const;

    Cone bracketS(const Cone& a, const Cone& b) const;
    Cone bracketA(const Cone& a, const Cone& b) const;
    Cone bracketB(const Cone& a, const Cone& b) const;
    // sign s with {F,G} = s {G,F}
    int symmetrySign(const Cone& a, const Cone& b) const;

    Cone ell1(const Cone& c) const { return pc_.ell1(c); }
    Cone jacobiator(const std::function<Cone(const Cone&, const Cone&)>& br, const Cone& a, const Cone& b,
                    const Cone& c) const;
    Cone threeBracketS(const Cone& a, const Cone& b, const Cone& c) const;

    // dgL[k]a on Im P
    LocalForm dHam(const LocalForm& F) const { return pc_.dHam(F); }
    LocalForm bracketHam(const LocalForm& F, const LocalForm& G) const;

private:
    SymplecticDevelopment dev_;
    PerturbedCone pc_;
    Pairing pairing_;
    std::vector<std::vector<Rational>> inverse_; // solves the Hamiltonian equation
};

// Generic L-infinity[1] algebra given by its brackets ell_1..ell_r (higher ones vanish).
template <class T>
struct LInfinityAlgebra {
    std::function<int(const T&)> degree;
    std::vector<std::function<T(const std::vector<T>&)>> ell; // ell[j-1] has arity j

    T bracket(const std::vector<T>& xs) const {
        if (xs.empty() || xs.size() > ell.size() || !ell[xs.size() - 1]) return T();
        return ell[xs.size() - 1](xs);
    }
};

// Koszul sign of listing xs in the order perm
template <class T>
int koszulSign(const std::vector<int>& degrees, const std::vector<int>& perm) {
    int s = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) s += (degrees[perm[i]] & 1) * (degrees[perm[j]] & 1);
    return s % 2 ? -1 : 1;
}

// all (i, m-i) unshuffles as index lists (first i entries, then the rest)
std::vector<std::vector<int>> unshuffles(int m, int i);
// set partitions of {0..m-1} into p blocks, blocks ordered by least element
std::vector<std::vector<std::vector<int>>> setPartitions(int m, int p);

// sum_{i+j=m+1} sum_{unshuffles} eps ell_j(ell_i(...), ...)
template <class T>
T jacobiResidual(const LInfinityAlgebra<T>& L, const std::vector<T>& xs) {
    const int m = static_cast<int>(xs.size());
    std::vector<int> deg;
    for (const auto& x : xs) deg.push_back(L.degree(x));
    T out{};
    for (int i = 1; i <= m; ++i) {
        int j = m + 1 - i;
        if (j > static_cast<int>(L.ell.size()) || i > static_cast<int>(L.ell.size())) continue;
        for (const auto& perm : unshuffles(m, i)) {
            std::vector<T> inner;
            for (int a = 0; a < i; ++a) inner.push_back(xs[perm[a]]);
            T first = L.bracket(inner);
            if (first.isZero()) continue;
            std::vector<T> outer{first};
            for (int a = i; a < m; ++a) outer.push_back(xs[perm[a]]);
            T term = L.bracket(outer);
            if (koszulSign<T>(deg, perm) < 0) term = -term;
            out += term;
        }
    }
    return out;
}

// S-tower (ell1, {,}^S, {,,}^S), B-structure (ell1, {,}^B) and the dgL[k]a on Im P
LInfinityAlgebra<Cone> sTower(const HamiltonianStructure& H);
LInfinityAlgebra<Cone> bStructure(const HamiltonianStructure& H);
LInfinityAlgebra<LocalForm> hamAlgebra(const HamiltonianStructure& H);

// twisted brackets: ell^a_j(xs) = sum_r 1/r! ell_{j+r}(a,..,a,xs)
template <class T>
LInfinityAlgebra<T> twist(const LInfinityAlgebra<T>& L, const T& a) {
    LInfinityAlgebra<T> out;
    out.degree = L.degree;
    const int top = static_cast<int>(L.ell.size());
    for (int j = 1; j <= top; ++j) {
        out.ell.push_back([L, a, j, top](const std::vector<T>& xs) {
            T sum = L.bracket(xs);
            Rational fact = 1;
            std::vector<T> args = xs;
            for (int r = 1; j + r <= top; ++r) {
                fact *= r;
                args.insert(args.begin(), a);
                T t = L.bracket(args);
                if (!t.isZero()) sum += Rational(1) / fact * t;
            }
            return sum;
        });
    }
    return out;
}

// MC residual ell1 a + 1/2 ell2(a,a) + 1/6 ell3(a,a,a) + ...
template <class T>
T maurerCartanResidual(const LInfinityAlgebra<T>& L, const T& a) {
    T out{};
    Rational fact = 1;
    std::vector<T> args;
    for (std::size_t j = 1; j <= L.ell.size(); ++j) {
        fact *= static_cast<long>(j);
        args.push_back(a);
        T t = L.bracket(args);
        if (!t.isZero()) out += Rational(1) / fact * t;
    }
    return out;
}

// L-infinity quasi-inverse of P: components I_k, I_1 = i~, I_{k} = -H~ R_k.
class QuasiInverse {
public:
    QuasiInverse(const HamiltonianStructure& H, int maxArity);

    int maxArity() const { return maxArity_; }
    Cone component(const std::vector<LocalForm>& xs) const;
    // sum_k 1/k! I_k(l, ..., l)
    Cone pushMC(const LocalForm& ell) const;
    // arity-m morphism residual (target side minus source side)
    Cone morphismResidual(const std::vector<LocalForm>& xs) const;

private:
    Cone obstruction(const std::vector<LocalForm>& xs, bool includeLinear) const;

    const HamiltonianStructure& H_;
    LInfinityAlgebra<Cone> target_;
    LInfinityAlgebra<LocalForm> source_;
    int maxArity_;
};

} // namespace vbc
