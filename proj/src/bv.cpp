#include "vbc/bv.hpp"

#include <chrono>

namespace vbc {

namespace {

LocalForm orZero(const LocalForm& x, const TheoryPtr& th) { return x.theory() ? x : LocalForm(th); }

LocalForm descentOperator(const Field& Q, const LocalForm& x) { return dH(x) - lie(Q, x); }

} // namespace

bool Report::ok() const {
    for (const auto& e : entries)
        if (!e.pass) return false;
    return true;
}

CheckEntry& Report::residual(std::string name, LocalForm r, std::string detail) {
    CheckEntry e;
    e.name = std::move(name);
    e.pass = r.isZero();
    e.residual = std::move(r);
    e.detail = std::move(detail);
    entries.push_back(std::move(e));
    return entries.back();
}

CheckEntry& Report::flag(std::string name, bool pass, std::string detail) {
    CheckEntry e;
    e.name = std::move(name);
    e.pass = pass;
    e.detail = std::move(detail);
    entries.push_back(std::move(e));
    return entries.back();
}

void Report::append(const Report& other) { entries.insert(entries.end(), other.entries.begin(), other.entries.end()); }

const CheckEntry* Report::firstFailure() const {
    for (const auto& e : entries)
        if (!e.pass) return &e;
    return nullptr;
}

TheorySpec TheorySpec::fromModel(const Model& m) {
    TheorySpec s;
    s.name = m.name;
    s.theory = m.theory;
    s.omega = m.omega;
    s.Q = m.Q;
    return s;
}

Report checkCompatibility(const TheorySpec& spec) {
    Report r;
    r.subject = spec.name;
    const TheoryPtr& th = spec.theory;
    const int n = th->dim();

    std::string why;
    std::optional<Degrees> d;
    try {
        d = spec.omega.degrees();
        if (spec.omega.isZero()) why = "omega is zero";
        else if (d->vfd != 2 || d->hfd != n) why = "omega must have bidegree (2, n)";
    } catch (const std::domain_error& e) {
        why = e.what();
    }
    r.flag("omega bidegree (2,n), homogeneous ghost degree", why.empty(),
           why.empty() ? "k = " + std::to_string(d->ghd) : why);
    r.residual("dV omega = 0", dV(spec.omega));
    r.residual("dH omega = 0", dH(spec.omega));

    std::string ghostIssue;
    if (spec.Q.ghost() != 1) ghostIssue = "Q has ghost degree " + std::to_string(spec.Q.ghost());
    for (int a = 0; a < th->fieldCount() && ghostIssue.empty(); ++a) {
        const LocalForm& qa = spec.Q[a];
        if (qa.isZero()) continue;
        auto v = qa.vfd(), h = qa.hfd(), g = qa.ghd();
        if (!v || *v != 0 || !h || *h != 0)
            ghostIssue = "Q^" + th->field(a).name + " is not a function on jets";
        else if (!g || *g != 1 + th->field(a).ghost)
            ghostIssue = "Q^" + th->field(a).name + " has ghost degree " + (g ? std::to_string(*g) : "mixed") +
                         ", expected " + std::to_string(1 + th->field(a).ghost);
    }
    r.flag("ghost bookkeeping of Q", ghostIssue.empty(), ghostIssue);

    Field qq = bracket(spec.Q, spec.Q);
    LocalForm first(th);
    std::string comp;
    for (int a = 0; a < th->fieldCount(); ++a)
        if (!qq[a].isZero()) {
            first = qq[a];
            comp = "component " + th->field(a).name;
            break;
        }
    r.residual("[Q,Q] = 0", first, comp);
    r.residual("Pi L_Q omega = 0", interiorEuler(lie(spec.Q, spec.omega)));

    if (why.empty()) {
        std::string pairingIssue;
        try {
            Pairing p = Pairing::fromAnchor(spec.omega);
            if (spec.pairing && *spec.pairing != p.M) pairingIssue = "declared pairing differs from omega";
        } catch (const DevelopmentError& e) {
            pairingIssue = e.what();
        }
        r.flag("constant ultralocal pairing", pairingIssue.empty(), pairingIssue);
    }
    return r;
}

LocalForm HamiltonianTriple::residual() const {
    const TheoryPtr& th = ambient.theory();
    return contract(Q, ambient.omega) - dV(orZero(L, th)) - dH(orZero(theta, th));
}

HamiltonianTriple canonicalTriple(const SymplecticDevelopment& dev) {
    if (!dev.certified()) throw DevelopmentError("development is not certified");
    HamiltonianTriple t;
    t.ambient = dev;
    t.Q = dev.Q;
    t.theta = verticalHomotopy(dev.omega);
    t.L = verticalHomotopy(contract(dev.Q, dev.omega) - dH(t.theta));
    return t;
}

LocalForm descentFromTriple(const HamiltonianTriple& t) {
    // L_Q omega = -dV iota_Q omega = -dV dH theta = dH dV theta
    LocalForm lq = -dV(contract(t.Q, t.ambient.omega));
    LocalForm dh = dH(dV(t.theta));
    return dh - lq;
}

HamiltonianTriple presentationTriple(const TheorySpec& spec, const SymplecticDevelopment& dev) {
    if (!spec.L && !spec.theta) return canonicalTriple(dev);
    HamiltonianTriple t;
    t.Q = spec.Q;
    if (spec.theta) {
        t.theta = *spec.theta;
        t.ambient = certifyDevelopment(dV(*spec.theta), dev.k, spec.Q);
        t.L = spec.L ? *spec.L : verticalHomotopy(contract(spec.Q, t.ambient.omega) - dH(t.theta));
    } else {
        t.ambient = dev;
        t.L = *spec.L;
        LocalForm base = verticalHomotopy(dev.omega);
        t.theta = base + horizontalHomotopy(contract(spec.Q, dev.omega) - dV(t.L) - dH(base));
    }
    return t;
}

LocalForm masterResidual(const HamiltonianTriple& t) {
    return Rational(1, 2) * contract(t.Q, contract(t.Q, t.ambient.omega)) - dH(t.L);
}

Report masterEquation(const HamiltonianTriple& t) {
    Report r;
    r.residual("1/2 iota_Q iota_Q omega = dH L", masterResidual(t));
    // (D - L_Q)(0,L) + 1/2 {(0,L),(0,L)}^B with X_L = Q; the shifted degree of (0,L) is 0
    LocalForm ell1 = dH(t.L) - lie(t.Q, t.L);
    LocalForm bB = Rational(2) * lie(t.Q, t.L) - contract(t.Q, contract(t.Q, t.ambient.omega));
    r.residual("(0,L) is Maurer-Cartan for the B-bracket", ell1 + Rational(1, 2) * bB);
    return r;
}

NoetherTotal noetherAndTotal(const HamiltonianTriple& t) {
    NoetherTotal out;
    out.Delta = t.L - contract(t.Q, t.theta);
    out.LL = t.L + eulerGrading(out.Delta);
    return out;
}

LocalForm collapseToGhostZero(const LocalForm& x) {
    if (!x.theory()) return x;
    const Theory& th = *x.theory();
    return x.filter([&th](const Word& w) {
        for (auto g : w) {
            auto k = Gen::kind(g);
            if ((k == GenKind::Jet || k == GenKind::Vertical) && th.field(Gen::field(g)).ghost != 0) return false;
        }
        return true;
    });
}

LocalForm lepageResidual(const HamiltonianTriple& t) {
    const int n = t.ambient.theory()->dim();
    LocalForm L0 = collapseToGhostZero(projectHfd(t.L, n));
    LocalForm th1 = collapseToGhostZero(projectBidegree(t.theta, 1, n - 1));
    return dV(L0) - interiorEuler(dV(L0)) + dH(th1);
}

Report noetherReport(const HamiltonianTriple& t) {
    Report r;
    NoetherTotal nt = noetherAndTotal(t);
    r.residual("(dH - L_Q) Delta = 0", descentOperator(t.Q, nt.Delta));
    r.residual("(dH - L_Q) LL = 0", descentOperator(t.Q, nt.LL));
    r.residual("ghost-zero collapse is a Lepage decomposition", lepageResidual(t));
    return r;
}

StandardMC standardMC(const HamiltonianTriple& t, const HamiltonianStructure& H) {
    StandardMC out;
    const TheoryPtr& th = t.ambient.theory();
    NoetherTotal nt = noetherAndTotal(t);
    out.lagrangian = Cone(LocalForm(th), nt.LL);
    out.value = out.lagrangian - Rational(1, 2) * H.perturbed().hTilde(H.bracketS(out.lagrangian, out.lagrangian));
    out.mcResidual = maurerCartanResidual(sTower(H), out.value);
    out.projectionResidual = functionalProjector(out.value) - functionalProjector(Cone(LocalForm(th), t.L));
    return out;
}

HamiltonianTriple redefineTriple(const HamiltonianTriple& t, const LocalForm& f) {
    const int n = t.ambient.theory()->dim();
    if (!projectHfd(f, n).isZero()) throw std::invalid_argument("redefinition potential must have hfd < n");
    if (auto v = f.vfd(); !f.isZero() && (!v || *v != 0))
        throw std::invalid_argument("redefinition potential must have vertical degree 0");
    HamiltonianTriple out = t;
    out.L = t.L + dH(f);
    out.theta = t.theta + dV(f);
    return out;
}

Redefinition liouvilleRedefine(const HamiltonianTriple& t, const LocalForm& eta) {
    const Field& Q = t.Q;
    LocalForm deta = dV(eta);
    Redefinition out;
    out.triple = t;
    out.triple.L = t.L + Rational(1, 2) * contract(Q, contract(Q, deta));
    out.triple.theta = t.theta - dH(eta) + contract(Q, deta);
    out.development = certifyDevelopment(t.ambient.omega + descentOperator(Q, deta), t.ambient.k, Q);
    out.triple.ambient = out.development;
    return out;
}

LocalForm expContract(const Field& Q, const LocalForm& x, int sign) {
    LocalForm out = x;
    LocalForm cur = x;
    Rational fact = 1;
    for (int j = 1; !cur.isZero(); ++j) {
        cur = contract(Q, cur);
        fact *= j;
        if (cur.isZero()) break;
        Rational c = Rational(1) / fact;
        if (sign < 0 && j % 2) c = -c;
        out += c * cur;
    }
    return out;
}

LocalForm globalPotential(const Field& Q, const LocalForm& beta) {
    LocalForm out = beta;
    LocalForm cur = beta;
    const int bound = beta.theory() ? beta.theory()->dim() + 2 : 0;
    for (int k = 0;; ++k) {
        LocalForm dv = dV(cur);
        if (dv.isZero()) break;
        if (k > bound) throw NilpotencyExceeded("global redefinition series did not terminate");
        cur = descentHomotopy(Q, dv);
        if (cur.isZero()) break;
        out += cur;
    }
    return out;
}

Redefinition globalRedefine(const HamiltonianTriple& t, const LocalForm& beta) {
    const TheoryPtr& th = t.ambient.theory();
    const int n = th->dim();
    if (!interiorEuler(dV(projectHfd(beta, n))).isZero())
        throw DevelopmentError("Pi dV beta^0 does not vanish");
    const Field& Q = t.Q;
    LocalForm B = globalPotential(Q, beta);
    LocalForm eB = expContract(Q, B, -1);
    LocalForm corr = verticalHomotopy(projectVfd(dV(eB) - dH(eB), 1));
    Redefinition out;
    out.triple = t;
    out.triple.theta = t.theta + verticalHomotopy(descentOperator(Q, beta));
    out.triple.L = t.L + corr;
    out.development = certifyDevelopment(t.ambient.omega + descentOperator(Q, beta), t.ambient.k, Q);
    out.triple.ambient = out.development;
    return out;
}

Classification classify(const HamiltonianTriple& a, const HamiltonianTriple& b) {
    Classification c;
    LocalForm dL = b.L - a.L;
    LocalForm dTh = b.theta - a.theta;
    Cone h = coneH(Cone::ofBody(dL));
    // a difference in theta^0 is dV-exact and is absorbed by a top component of F
    const int n = a.ambient.theory()->dim();
    c.F = -h.body + verticalHomotopy(projectHfd(dTh, n));
    c.K = h.base;
    c.lagrangianResidual = dL - dH(c.F) - c.K;
    LocalForm rest = dTh - dV(c.F);
    c.gamma = rest.isZero() ? LocalForm(rest.theory()) : horizontalHomotopy(rest);
    c.thetaResidual = rest - dH(c.gamma);
    return c;
}

MomentumMap momentumMap(const HamiltonianTriple& t) { return {t.L + t.theta}; }

Report checkMultisymplectic(const HamiltonianTriple& t) {
    Report r;
    const LocalForm& om = t.ambient.omega;
    LocalForm lambda = momentumMap(t).lambda;
    NoetherTotal nt = noetherAndTotal(t);
    r.residual("e^{iota_Q} omega = d lambda", expContract(t.Q, om) - dTot(lambda));
    r.residual("e^{-iota_Q} lambda = Delta + theta", expContract(t.Q, lambda, -1) - nt.Delta - t.theta);
    r.residual("omega = (d - L_Q)(Delta + theta)", om - dTot(nt.Delta + t.theta) + lie(t.Q, nt.Delta + t.theta));
    r.residual("(L_Q - dH) lambda = d Delta", lie(t.Q, lambda) - dH(lambda) - dTot(nt.Delta));
    return r;
}

} // namespace vbc
