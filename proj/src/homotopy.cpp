#include "vbc/homotopy.hpp"

#include <bit>
#include <map>
#include <set>

namespace vbc {

namespace {

Rational binomial(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

void subIndices(const MultiIndex& I, int pos, MultiIndex& cur, std::set<MultiIndex>& out) {
    if (pos == Theory::kMaxDim) {
        out.insert(cur);
        return;
    }
    for (int v = 0; v <= I[pos]; ++v) {
        cur[pos] = v;
        subIndices(I, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

bool dominates(const MultiIndex& I, const MultiIndex& J) {
    for (int i = 0; i < Theory::kMaxDim; ++i)
        if (I[i] < J[i]) return false;
    return true;
}

} // namespace

LocalForm verticalHomotopy(const LocalForm& x) {
    LocalForm out(x.theory());
    if (x.isZero()) return out;
    const Theory& th = *x.theory();
    std::map<int, LocalForm> byWeight;
    for (const auto& [w, c] : x.terms()) {
        auto d = wordDegrees(th, w);
        int weight = d.jetDegree + d.vfd;
        if (weight == 0) continue;
        byWeight.try_emplace(weight, x.theory()).first->second.addTerm(w, c);
    }
    Field R = radialField(x.theory());
    for (const auto& [weight, part] : byWeight) out += contract(R, part) * Rational(1, weight);
    return out;
}

LocalForm horizontalHomotopy(const LocalForm& x) {
    LocalForm out(x.theory());
    if (x.isZero()) return out;
    const Theory& th = *x.theory();
    const TheoryPtr& tp = x.theory();
    const int n = th.dim();

    // x = sum_S dx^S ^ m_S, grouped by (vfd, S)
    std::map<std::pair<int, unsigned>, LocalForm> groups;
    for (const auto& [w, c] : x.terms()) {
        std::size_t k = 0;
        while (k < w.size() && Gen::kind(w[k]) != GenKind::Horizontal) ++k;
        Word m(w.begin(), w.begin() + k);
        unsigned S = 0;
        for (std::size_t j = k; j < w.size(); ++j) S |= 1u << Gen::coord(w[j]);
        auto d = wordDegrees(th, m);
        if (d.vfd == 0) throw std::domain_error("horizontal homotopy needs vertical degree >= 1");
        int q = static_cast<int>(w.size() - k);
        Rational v = ((d.total * q) % 2 != 0) ? Rational(-c) : c;
        groups.try_emplace({d.vfd, S}, tp).first->second.addTerm(std::move(m), v);
    }

    for (const auto& [key, m] : groups) {
        const int p = key.first;
        const unsigned S = key.second;
        const int q = std::popcount(S);
        Word sw;
        for (int i = 0; i < n; ++i)
            if (S & (1u << i)) sw.push_back(Gen::horizontal(i));
        LocalForm dxS = LocalForm::normalize(tp, sw);

        std::map<int, std::map<MultiIndex, LocalForm>> P;
        std::set<Gen::Raw> verts;
        for (const auto& [w, c] : m.terms())
            for (Gen::Raw g : w)
                if (Gen::kind(g) == GenKind::Vertical) verts.insert(g);
        for (Gen::Raw g : verts) P[Gen::field(g)].emplace(Gen::index(g), leftPartial(g, m));

        for (const auto& [a, Pa] : P) {
            std::set<MultiIndex> Js;
            for (const auto& [I, f] : Pa) {
                MultiIndex cur{};
                subIndices(I, 0, cur, Js);
            }
            LocalForm du = LocalForm::generator(tp, Gen::vertical(th, a, {}));
            for (const MultiIndex& J : Js) {
                int nj = order(J);
                if (nj == 0 || nj + n - q == 0) continue;
                LocalForm gJ(tp);
                for (const auto& [I, f] : Pa) {
                    if (!dominates(I, J)) continue;
                    MultiIndex K{};
                    Rational b = 1;
                    for (int i = 0; i < Theory::kMaxDim; ++i) {
                        K[i] = I[i] - J[i];
                        b *= binomial(I[i], J[i]);
                    }
                    LocalForm t = totalDerivative(K, f) * b;
                    gJ += (order(K) % 2) ? -t : t;
                }
                if (gJ.isZero()) continue;
                LocalForm base = du * gJ;
                Rational coef(1, p * (nj + n - q));
                for (int i = 0; i < n; ++i) {
                    if (J[i] == 0 || !(S & (1u << i))) continue;
                    MultiIndex Jm = J;
                    --Jm[i];
                    out += horizontalContract(i, dxS) * totalDerivative(Jm, base) * (coef * J[i]);
                }
            }
        }
    }
    return out;
}

LocalForm perturbedHorizontalHomotopy(const LocalForm& x) {
    LocalForm out(x.theory());
    LocalForm cur = x;
    const int bound = x.isZero() ? 0 : x.theory()->dim() + 2;
    for (int k = 0; !cur.isZero(); ++k) {
        if (k > bound) throw NilpotencyExceeded("perturbed horizontal homotopy did not terminate");
        LocalForm h = horizontalHomotopy(cur);
        out += h;
        cur = -dV(h);
    }
    return out;
}

LocalForm shiftedHorizontalHomotopy(const LocalForm& x, int coord) {
    if (x.isZero()) return LocalForm(x.theory());
    auto s = [&](const LocalForm& y) { return horizontalHomotopy(totalDerivative(coord, horizontalHomotopy(y))); };
    return horizontalHomotopy(x) + dH(s(x)) - s(dH(x));
}

Cone& Cone::operator+=(const Cone& o) {
    base += o.base;
    body += o.body;
    return *this;
}

Cone& Cone::operator-=(const Cone& o) {
    base -= o.base;
    body -= o.body;
    return *this;
}

Cone& Cone::operator*=(const Rational& c) {
    base *= c;
    body *= c;
    return *this;
}

std::string Cone::str() const { return "(" + base.str() + ", " + body.str() + ")"; }

Cone coneD(const Cone& c) {
    if (!isBaseForm(c.base)) throw std::domain_error("cone base slot must be a base form");
    return Cone(dH(c.base), -dH(c.body) + c.base);
}

LocalForm iV(const Cone& c) { return dV(c.body); }

Cone pV(const LocalForm& x) { return Cone::ofBody(verticalHomotopy(projectVfd(x, 1))); }

Cone zeroStarHomotopy(const Cone& c) { return Cone(zeroSectionPullback(c.body), LocalForm(c.body.theory())); }

Cone coneH(const Cone& c) {
    Cone out = zeroStarHomotopy(c);
    out.base.setTheory(c.base.theory());
    LocalForm v = iV(c);
    if (!v.isZero()) out += pV(perturbedHorizontalHomotopy(v));
    return out;
}

LocalForm functionalProjector(const Cone& c) {
    LocalForm v = dV(c.body);
    if (v.isZero()) return v;
    return verticalHomotopy(interiorEuler(v));
}

Cone include(const LocalForm& F) { return Cone::ofBody(F); }

bool isLocalFunctional(const LocalForm& F) { return functionalProjector(include(F)) == F; }

Cone hamD(const Cone& c) { return -coneD(c); }

Cone hamH(const Cone& c) { return -coneH(c); }

Cone lieCone(const Field& Q, const Cone& c) {
    return Cone(LocalForm(commonTheory(c.base.theory(), Q.theory())), lie(Q, c.body));
}

PerturbedCone::PerturbedCone(Field Q) : Q_(std::move(Q)), bound_(Q_.theory()->dim() + 2) {}

Cone PerturbedCone::ell1(const Cone& c) const { return hamD(c) - lieCone(Q_, c); }

Cone PerturbedCone::hTilde(const Cone& c) const {
    Cone out;
    Cone cur = c;
    for (int k = 0; !cur.isZero(); ++k) {
        if (k > bound_) throw NilpotencyExceeded("H~_Q series did not terminate");
        Cone h = hamH(cur);
        out += h;
        cur = lieCone(Q_, h);
    }
    return out;
}

Cone PerturbedCone::iTilde(const LocalForm& F) const {
    Cone out;
    Cone cur = include(F);
    for (int k = 0; !cur.isZero(); ++k) {
        if (k > bound_) throw NilpotencyExceeded("i~ series did not terminate");
        out += cur;
        cur = hamH(lieCone(Q_, cur));
    }
    return out;
}

LocalForm PerturbedCone::gTilde(const Cone& c) const {
    LocalForm out(c.body.theory());
    Cone cur = c;
    for (int k = 0; !cur.isZero(); ++k) {
        if (k > bound_) throw NilpotencyExceeded("g~ series did not terminate");
        out += functionalProjector(cur);
        cur = lieCone(Q_, hamH(cur));
    }
    return out;
}

LocalForm PerturbedCone::dHam(const LocalForm& F) const { return -functionalProjector(lieCone(Q_, include(F))); }

} // namespace vbc
