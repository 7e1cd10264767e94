#include "vbc/linfty.hpp"

#include <bit>
#include <numeric>

namespace vbc {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Gauss-Jordan over Q; throws when singular
Matrix invert(Matrix a) {
    const std::size_t n = a.size();
    Matrix inv(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw DevelopmentError("pairing matrix is degenerate");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rational s = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= s;
            inv[col][j] /= s;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

// g with x = g ^ vol, for x of full horizontal degree
LocalForm stripVolume(const LocalForm& x) {
    LocalForm out(x.theory());
    for (const auto& [w, c] : x.terms()) {
        Word m;
        for (auto g : w)
            if (Gen::kind(g) != GenKind::Horizontal) m.push_back(g);
        out.addTerm(std::move(m), c);
    }
    return out;
}

int pedOf(const Theory& th, const WordDegrees& d) { return d.ghd - (th.dim() - d.hfd); }

} // namespace

LocalForm SymplecticDevelopment::component(int hcd) const {
    return projectHfd(omega, theory()->dim() - hcd);
}

SymplecticDevelopment certifyDevelopment(const LocalForm& omegaBullet, int k, const Field& Q) {
    SymplecticDevelopment dev;
    dev.omega = omegaBullet;
    if (!dev.omega.theory()) dev.omega.setTheory(Q.theory());
    dev.k = k;
    dev.Q = Q;
    dev.dVResidual = dV(omegaBullet);
    dev.descentResidual = dH(omegaBullet) - lie(Q, omegaBullet);
    return dev;
}

SymplecticDevelopment buildDevelopment(const LocalForm& omega, const Field& Q, const HorizontalHomotopy& h) {
    const TheoryPtr th = commonTheory(omega.theory(), Q.theory());
    if (Q.ghost() != 1) throw DevelopmentError("Q must have ghost degree 1");
    if (omega.isZero()) throw DevelopmentError("omega is zero");
    Degrees d = omega.degrees();
    if (d.vfd != 2 || d.hfd != th->dim()) throw DevelopmentError("omega must have bidegree (2, n)");
    if (!dV(omega).isZero()) throw DevelopmentError("omega is not dV-closed");
    if (!interiorEuler(lie(Q, omega)).isZero()) throw DevelopmentError("Pi L_Q omega does not vanish");

    LocalForm total = omega;
    LocalForm cur = omega;
    for (int j = 1; j <= th->dim() && !cur.isZero(); ++j) {
        cur = dV(verticalHomotopy(h(lie(Q, cur))));
        total += cur;
    }
    return certifyDevelopment(total, d.ghd, Q);
}

LocalForm descentHomotopy(const Field& Q, const LocalForm& x, const HorizontalHomotopy& h) {
    LocalForm out(x.theory());
    LocalForm cur = x;
    const int bound = x.theory() ? x.theory()->dim() + 2 : 0;
    for (int k = 0; !cur.isZero(); ++k) {
        if (k > bound) throw NilpotencyExceeded("descent homotopy series did not terminate");
        LocalForm t = h(cur);
        out += t;
        cur = lie(Q, t);
    }
    return out;
}

LocalForm developmentGauge(const SymplecticDevelopment& a, const SymplecticDevelopment& b) {
    return descentHomotopy(a.Q, b.omega - a.omega);
}

Pairing Pairing::fromAnchor(const LocalForm& omega0) {
    const TheoryPtr& tp = omega0.theory();
    const Theory& th = *tp;
    const int N = th.fieldCount();
    for (const auto& [w, c] : omega0.terms()) {
        bool ok = w.size() == static_cast<std::size_t>(2 + th.dim());
        for (std::size_t j = 0; ok && j < w.size(); ++j) {
            if (j < 2)
                ok = Gen::kind(w[j]) == GenKind::Vertical && Gen::indexOrder(w[j]) == 0;
            else
                ok = Gen::kind(w[j]) == GenKind::Horizontal;
        }
        if (!ok) throw DevelopmentError("anchor is not a constant ultralocal pairing: " + omega0.str());
    }
    Pairing P;
    P.M.assign(N, std::vector<Rational>(N, Rational(0)));
    const LocalForm vol = LocalForm::volume(tp);
    const Word& vw = vol.terms().begin()->first;
    for (int b = 0; b < N; ++b) {
        LocalForm db = leftPartial(Gen::vertical(th, b, MultiIndex{}), omega0);
        for (int a = 0; a < N; ++a) {
            LocalForm dab = leftPartial(Gen::vertical(th, a, MultiIndex{}), db);
            auto it = dab.terms().find(vw);
            if (it != dab.terms().end()) P.M[b][a] = it->second;
        }
    }
    return P;
}

std::optional<int> tryPartialEffectiveDegree(const Cone& c) {
    std::optional<int> out;
    auto note = [&](int v) {
        if (out && *out != v) throw std::domain_error("cone element is not homogeneous in partial effective degree");
        out = v;
    };
    if (c.body.theory())
        for (const auto& [w, _] : c.body.terms()) note(pedOf(*c.body.theory(), wordDegrees(*c.body.theory(), w)));
    if (c.base.theory())
        for (const auto& [w, _] : c.base.terms()) note(pedOf(*c.base.theory(), wordDegrees(*c.base.theory(), w)) - 1);
    return out;
}

int partialEffectiveDegree(const Cone& c) {
    auto v = tryPartialEffectiveDegree(c);
    if (!v) throw std::domain_error("zero cone element has no degree");
    return *v;
}

HamiltonianStructure::HamiltonianStructure(SymplecticDevelopment dev)
    : dev_(std::move(dev)), pc_(dev_.Q), pairing_(Pairing::fromAnchor(dev_.anchor())) {
    const int N = theory()->fieldCount();
    // N[a][b] = s_ab M[b][a], stored per parity of the field's ghost degree
    for (int par = 0; par < 2; ++par) {
        Matrix m(N, std::vector<Rational>(N, Rational(0)));
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) {
                int xb = par + theory()->field(b).ghost;
                int dua = theory()->field(a).ghost + 1;
                bool neg = ((xb & 1) & (dua & 1)) != 0;
                m[a][b] = neg ? Rational(-pairing_.M[b][a]) : pairing_.M[b][a];
            }
        Matrix inv = invert(m);
        inverse_.insert(inverse_.end(), inv.begin(), inv.end());
    }
}

int HamiltonianStructure::degree(const Cone& c) const {
    auto p = tryPartialEffectiveDegree(c);
    return p ? *p - dev_.k - 1 : 0;
}

Field HamiltonianStructure::hamiltonianField(const Cone& c) const {
    const TheoryPtr& tp = theory();
    const int N = tp->fieldCount();
    auto p = tryPartialEffectiveDegree(c);
    const int gX = p ? *p - dev_.k : 0;
    Field X(tp, gX);
    LocalForm top = c.body.theory() ? projectHfd(c.body, tp->dim()) : LocalForm(tp);
    if (top.isZero()) return X;
    LocalForm el = eulerLagrange(top);
    std::vector<LocalForm> g;
    for (int a = 0; a < N; ++a) g.push_back(stripVolume(leftPartial(Gen::vertical(*tp, a, MultiIndex{}), el)));
    const std::size_t off = (gX & 1) ? static_cast<std::size_t>(N) : 0;
    for (int b = 0; b < N; ++b) {
        LocalForm xb(tp);
        for (int a = 0; a < N; ++a) {
            const Rational& m = inverse_[off + b][a];
            if (m != 0) xb += m * g[a];
        }
        X.set(b, std::move(xb));
    }
    return X;
}

LocalForm HamiltonianStructure::hamiltonianResidual(const Cone& c, const Field& X) const {
    LocalForm lhs = interiorEuler(contract(X, dev_.omega));
    LocalForm rhs = c.body.theory() ? eulerLagrange(projectHfd(c.body, theory()->dim())) : LocalForm(theory());
    return lhs - rhs;
}

int HamiltonianStructure::symmetrySign(const Cone& a, const Cone& b) const {
    return ((degree(a) & 1) && (degree(b) & 1)) ? -1 : 1;
}

Cone HamiltonianStructure::bracketS(const Cone& a, const Cone& b) const {
    Field Xa = hamiltonianField(a), Xb = hamiltonianField(b);
    return Cone(LocalForm(theory()), contract(Xa, contract(Xb, dev_.omega)));
}

Cone HamiltonianStructure::bracketA(const Cone& a, const Cone& b) const {
    Field Xa = hamiltonianField(a), Xb = hamiltonianField(b);
    LocalForm fa = a.body.theory() ? a.body : LocalForm(theory());
    LocalForm fb = b.body.theory() ? b.body : LocalForm(theory());
    LocalForm out = lie(Xa, fb) + Rational(symmetrySign(a, b)) * lie(Xb, fa);
    return Cone(LocalForm(theory()), Rational(1, 2) * out);
}

Cone HamiltonianStructure::bracketB(const Cone& a, const Cone& b) const {
    return Rational(2) * bracketA(a, b) - bracketS(a, b);
}

Cone HamiltonianStructure::jacobiator(const std::function<Cone(const Cone&, const Cone&)>& br, const Cone& x,
                                      const Cone& y, const Cone& z) const {
    const int dx = degree(x) & 1, dy = degree(y) & 1, dz = degree(z) & 1;
    Cone out = br(br(x, y), z);
    Cone t2 = br(br(x, z), y);
    out += (dy & dz) ? -t2 : t2;
    Cone t3 = br(br(y, z), x);
    out += (dx & (dy ^ dz)) ? -t3 : t3;
    return out;
}

Cone HamiltonianStructure::threeBracketS(const Cone& a, const Cone& b, const Cone& c) const {
    auto br = [this](const Cone& u, const Cone& v) { return bracketS(u, v); };
    return -pc_.hTilde(jacobiator(br, a, b, c));
}

LocalForm HamiltonianStructure::bracketHam(const LocalForm& F, const LocalForm& G) const {
    return functionalProjector(bracketS(include(F), include(G)));
}

std::vector<std::vector<int>> unshuffles(int m, int i) {
    std::vector<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        if (std::popcount(mask) != i) continue;
        std::vector<int> perm;
        for (int j = 0; j < m; ++j)
            if (mask & (1u << j)) perm.push_back(j);
        for (int j = 0; j < m; ++j)
            if (!(mask & (1u << j))) perm.push_back(j);
        out.push_back(std::move(perm));
    }
    return out;
}

namespace {
void partitionRec(int j, int m, int p, std::vector<std::vector<int>>& cur,
                  std::vector<std::vector<std::vector<int>>>& out) {
    if (j == m) {
        if (static_cast<int>(cur.size()) == p) out.push_back(cur);
        return;
    }
    if (static_cast<int>(cur.size()) + (m - j) < p) return;
    for (std::size_t b = 0; b < cur.size(); ++b) {
        cur[b].push_back(j);
        partitionRec(j + 1, m, p, cur, out);
        cur[b].pop_back();
    }
    if (static_cast<int>(cur.size()) < p) {
        cur.push_back({j});
        partitionRec(j + 1, m, p, cur, out);
        cur.pop_back();
    }
}
} // namespace

std::vector<std::vector<std::vector<int>>> setPartitions(int m, int p) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> cur;
    partitionRec(0, m, p, cur, out);
    return out;
}

LInfinityAlgebra<Cone> sTower(const HamiltonianStructure& H) {
    LInfinityAlgebra<Cone> L;
    L.degree = [&H](const Cone& c) { return H.degree(c); };
    L.ell.push_back([&H](const std::vector<Cone>& x) { return H.ell1(x[0]); });
    L.ell.push_back([&H](const std::vector<Cone>& x) { return H.bracketS(x[0], x[1]); });
    L.ell.push_back([&H](const std::vector<Cone>& x) { return H.threeBracketS(x[0], x[1], x[2]); });
    return L;
}

LInfinityAlgebra<Cone> bStructure(const HamiltonianStructure& H) {
    LInfinityAlgebra<Cone> L;
    L.degree = [&H](const Cone& c) { return H.degree(c); };
    L.ell.push_back([&H](const std::vector<Cone>& x) { return H.ell1(x[0]); });
    L.ell.push_back([&H](const std::vector<Cone>& x) { return H.bracketB(x[0], x[1]); });
    return L;
}

LInfinityAlgebra<LocalForm> hamAlgebra(const HamiltonianStructure& H) {
    LInfinityAlgebra<LocalForm> L;
    L.degree = [&H](const LocalForm& F) { return H.degree(F); };
    L.ell.push_back([&H](const std::vector<LocalForm>& x) { return H.dHam(x[0]); });
    L.ell.push_back([&H](const std::vector<LocalForm>& x) { return H.bracketHam(x[0], x[1]); });
    return L;
}

QuasiInverse::QuasiInverse(const HamiltonianStructure& H, int maxArity)
    : H_(H), target_(sTower(H)), source_(hamAlgebra(H)), maxArity_(maxArity) {
    if (maxArity < 1 || maxArity > H.theory()->dim() + 1)
        throw std::invalid_argument("quasi-inverse arity must lie in 1..n+1");
}

Cone QuasiInverse::component(const std::vector<LocalForm>& xs) const {
    const int m = static_cast<int>(xs.size());
    if (m == 0 || m > maxArity_) return Cone();
    if (m == 1) return H_.perturbed().iTilde(xs[0]);
    return -H_.perturbed().hTilde(obstruction(xs, false));
}

// target side minus source side of the arity-m morphism equation
Cone QuasiInverse::obstruction(const std::vector<LocalForm>& xs, bool includeLinear) const {
    const int m = static_cast<int>(xs.size());
    std::vector<int> deg;
    for (const auto& x : xs) deg.push_back(source_.degree(x));
    Cone out;
    const int maxP = std::min<int>(m, static_cast<int>(target_.ell.size()));
    for (int p = includeLinear ? 1 : 2; p <= maxP; ++p) {
        for (const auto& blocks : setPartitions(m, p)) {
            std::vector<int> perm;
            std::vector<Cone> args;
            bool zero = false;
            for (const auto& b : blocks) {
                std::vector<LocalForm> sub;
                for (int j : b) {
                    perm.push_back(j);
                    sub.push_back(xs[j]);
                }
                Cone v = component(sub);
                if (v.isZero()) zero = true;
                args.push_back(std::move(v));
            }
            if (zero) continue;
            Cone t = target_.bracket(args);
            out += koszulSign<LocalForm>(deg, perm) < 0 ? -t : t;
        }
    }
    const int maxI = std::min<int>(m, static_cast<int>(source_.ell.size()));
    for (int i = includeLinear ? 1 : 2; i <= maxI; ++i) {
        for (const auto& perm : unshuffles(m, i)) {
            std::vector<LocalForm> inner;
            for (int a = 0; a < i; ++a) inner.push_back(xs[perm[a]]);
            LocalForm d = source_.bracket(inner);
            if (d.isZero()) continue;
            std::vector<LocalForm> outer{d};
            for (int a = i; a < m; ++a) outer.push_back(xs[perm[a]]);
            Cone t = component(outer);
            out -= koszulSign<LocalForm>(deg, perm) < 0 ? -t : t;
        }
    }
    return out;
}

Cone QuasiInverse::morphismResidual(const std::vector<LocalForm>& xs) const { return obstruction(xs, true); }

Cone QuasiInverse::pushMC(const LocalForm& ell) const {
    Cone out;
    Rational fact = 1;
    std::vector<LocalForm> args;
    for (int k = 1; k <= maxArity_; ++k) {
        fact *= k;
        args.push_back(ell);
        Cone t = component(args);
        if (!t.isZero()) out += Rational(1) / fact * t;
    }
    return out;
}

} // namespace vbc
