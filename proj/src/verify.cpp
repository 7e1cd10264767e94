#include "vbc/verify.hpp"

#include <chrono>

namespace vbc {

namespace {

LocalForm flatten(const Cone& c) { return c.body.isZero() ? c.base : c.body; }

LocalForm fieldResidual(const Field& X, const Field& Y) {
    for (int a = 0; a < X.theory()->fieldCount(); ++a)
        if (X[a] != Y[a]) return X[a] - Y[a];
    return LocalForm(X.theory());
}

LocalForm descent(const Field& Q, const LocalForm& x) { return dH(x) - lie(Q, x); }

RandomSpec formSpec(int vfd, int hfd, int ghd) {
    RandomSpec s;
    s.terms = 2;
    s.maxJetOrder = 1;
    s.maxJetFactors = 2;
    s.coeffRange = 2;
    s.vfd = vfd;
    s.hfd = hfd;
    s.ghd = ghd;
    return s;
}

} // namespace

HamiltonianSampler::HamiltonianSampler(const HamiltonianStructure& H, std::uint64_t seed, RandomSpec spec)
    : H_(H), rng_(seed), spec_(spec) {}

RandomSpec HamiltonianSampler::defaultSpec() {
    RandomSpec s;
    s.terms = 2;
    s.maxJetOrder = 2;
    s.maxJetFactors = 2;
    s.coeffRange = 2;
    return s;
}

Cone HamiltonianSampler::cone() {
    int ped = H_.k() + std::uniform_int_distribution<int>(-1, 2)(rng_);
    return randomCone(H_.theory(), rng_, ped, spec_);
}

LocalForm HamiltonianSampler::functional() {
    int g = H_.k() + std::uniform_int_distribution<int>(0, 2)(rng_);
    return randomFunctional(H_.theory(), rng_, g, spec_);
}

Tally::Slot& Tally::slot(const std::string& name) {
    for (auto& s : slots_)
        if (s.name == name) return s;
    slots_.push_back({name, LocalForm(), 0, 0, 0});
    return slots_.back();
}

void Tally::add(const std::string& name, const std::function<LocalForm()>& residual) {
    auto t0 = std::chrono::steady_clock::now();
    LocalForm r = residual();
    auto t1 = std::chrono::steady_clock::now();
    Slot& s = slot(name);
    s.millis += std::chrono::duration<double, std::milli>(t1 - t0).count();
    ++s.runs;
    if (!r.isZero()) {
        if (s.failures++ == 0) s.first = r;
    }
}

void Tally::add(const std::string& name, const std::function<Cone()>& residual) {
    add(name, std::function<LocalForm()>([&residual] { return flatten(residual()); }));
}

void Tally::flag(const std::string& name, const std::function<bool()>& holds) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = holds();
    auto t1 = std::chrono::steady_clock::now();
    Slot& s = slot(name);
    s.millis += std::chrono::duration<double, std::milli>(t1 - t0).count();
    ++s.runs;
    s.failures += !ok;
}

void Tally::into(Report& r) const {
    for (const auto& s : slots_) {
        CheckEntry e;
        e.name = s.name;
        e.pass = s.failures == 0;
        e.residual = s.first;
        e.detail = s.failures ? std::to_string(s.failures) + " of " + std::to_string(s.runs) + " samples fail"
                     : s.runs > 1 ? std::to_string(s.runs) + " samples"
                                  : std::string();
        e.millis = s.millis;
        r.entries.push_back(std::move(e));
    }
}

Report developmentReport(const SymplecticDevelopment& dev) {
    Report r;
    const int n = dev.theory()->dim();
    for (int j = 0; j <= n; ++j) {
        LocalForm c = dev.component(j);
        if (!c.isZero()) r.flag("omega^" + std::to_string(j), true, c.str());
    }
    r.residual("dV omega = 0", dev.dVResidual);
    r.residual("(dH - L_Q) omega = 0", dev.descentResidual);
    return r;
}

Report tripleReport(const HamiltonianTriple& t) {
    Report r;
    r.flag("L", true, t.L.str());
    r.flag("theta", true, t.theta.str());
    r.residual("iota_Q omega = dV L + dH theta", t.residual());
    r.append(masterEquation(t));
    r.residual("(dH - L_Q) omega recovered from the triple", descentFromTriple(t));
    r.append(noetherReport(t));
    return r;
}

Report bracketReport(const HamiltonianStructure& H, const VerifyOptions& o) {
    HamiltonianSampler smp(H, o.seed);
    Tally tally;
    auto S = [&H](const Cone& u, const Cone& v) { return H.bracketS(u, v); };
    auto A = [&H](const Cone& u, const Cone& v) { return H.bracketA(u, v); };
    auto B = [&H](const Cone& u, const Cone& v) { return H.bracketB(u, v); };
    const auto tower = sTower(H);
    const auto bstr = bStructure(H);
    for (int t = 0; t < o.samples; ++t) {
        Cone a = smp.cone(), b = smp.cone(), c = smp.cone();
        const Field Xa = H.hamiltonianField(a), Xb = H.hamiltonianField(b);
        tally.add("iota_X omega = -dV F for the resolved field", [&] { return H.hamiltonianResidual(a, Xa); });
        const Rational s = H.symmetrySign(a, b);
        tally.add("graded symmetry of S", std::function<Cone()>([&] { return S(a, b) - s * S(b, a); }));
        tally.add("graded symmetry of A", std::function<Cone()>([&] { return A(a, b) - s * A(b, a); }));
        tally.add("graded symmetry of B", std::function<Cone()>([&] { return B(a, b) - s * B(b, a); }));
        tally.add("P S = P A = P B", [&] {
            Cone sv = S(a, b);
            return functionalProjector(sv - A(a, b)) + functionalProjector(sv - B(a, b));
        });
        // X_{F,G} = (-1)^{ped F - k} [X_F, X_G]
        Field expected = bracket(Xa, Xb);
        if ((H.degree(a) + 1) % 2 != 0) expected = Rational(-1) * expected;
        tally.add("X of S bracket = signed [X_F, X_G]", [&] { return fieldResidual(H.hamiltonianField(S(a, b)), expected); });
        tally.add("X of A bracket = signed [X_F, X_G]", [&] { return fieldResidual(H.hamiltonianField(A(a, b)), expected); });
        tally.add("X of B bracket = signed [X_F, X_G]", [&] { return fieldResidual(H.hamiltonianField(B(a, b)), expected); });
        tally.add("(D - L_Q)^2 = 0", std::function<Cone()>([&] { return H.ell1(H.ell1(a)); }));
        tally.add("D - L_Q is a derivation of S", std::function<Cone()>([&] { return jacobiResidual(tower, {a, b}); }));
        tally.add("D - L_Q is a derivation of B", std::function<Cone()>([&] { return jacobiResidual(bstr, {a, b}); }));
        tally.add("Jac_B = 0", std::function<Cone()>([&] { return H.jacobiator(B, a, b, c); }));
        tally.add("P Jac_S = 0", [&] { return functionalProjector(H.jacobiator(S, a, b, c)); });
        tally.add("P Jac_A = 0", [&] { return functionalProjector(H.jacobiator(A, a, b, c)); });
    }
    Report r;
    tally.into(r);
    return r;
}

Report linftyReport(const HamiltonianStructure& H, TowerKind kind, const VerifyOptions& o) {
    if (o.arity < 1 || o.arity > 4) throw std::invalid_argument("arity must lie in 1..4");
    HamiltonianSampler smp(H, o.seed);
    const auto L = kind == TowerKind::S ? sTower(H) : bStructure(H);
    const std::string tag = kind == TowerKind::S ? "S-tower" : "B-structure";
    Tally tally;
    for (int t = 0; t < o.samples; ++t) {
        std::vector<Cone> xs;
        for (int m = 1; m <= o.arity; ++m) {
            xs.push_back(smp.cone());
            tally.add(tag + " generalized Jacobi, arity " + std::to_string(m),
                      std::function<Cone()>([&] { return jacobiResidual(L, xs); }));
        }
    }
    Report r;
    tally.into(r);
    return r;
}

Report hamAlgebraReport(const HamiltonianStructure& H, const HamiltonianTriple& t, const VerifyOptions& o) {
    HamiltonianSampler smp(H, o.seed);
    const auto F = hamAlgebra(H);
    const LocalForm ell = functionalProjector(Cone::ofBody(t.L));
    Tally tally;
    int literal = 0;
    for (int s = 0; s < o.samples; ++s) {
        LocalForm x = smp.functional(), y = smp.functional(), z = smp.functional();
        tally.add("d_ham^2 = 0", [&] { return H.dHam(H.dHam(x)); });
        const Rational sg = H.symmetrySign(Cone::ofBody(x), Cone::ofBody(y));
        tally.add("graded symmetry of {,}_ham", [&] { return H.bracketHam(x, y) - sg * H.bracketHam(y, x); });
        tally.flag("{,}_ham lands in local functionals", [&] { return isLocalFunctional(H.bracketHam(x, y)); });
        tally.add("Leibniz rule for d_ham", [&] { return jacobiResidual(F, {x, y}); });
        tally.add("Jacobi identity for {,}_ham", [&] { return jacobiResidual(F, {x, y, z}); });
        tally.add("d_ham x = -{ell, x}_ham", [&] { return H.dHam(x) + H.bracketHam(ell, x); });
        literal += !(H.dHam(x) - H.bracketHam(ell, x)).isZero();
    }
    tally.add("{ell, ell}_ham = 0", [&] { return H.bracketHam(ell, ell); });
    tally.add("d_ham ell = 0", [&] { return H.dHam(ell); });
    Report r;
    tally.into(r);
    for (auto& e : r.entries)
        if (e.name == "d_ham x = -{ell, x}_ham")
            e.detail += "; the unsigned form d_ham x = {ell, x}_ham fails on " + std::to_string(literal);
    return r;
}

Report maurerCartanReport(const HamiltonianStructure& H, const HamiltonianTriple& t, const VerifyOptions&) {
    Report r = masterEquation(t);
    StandardMC s = standardMC(t, H);
    r.flag("standard MC element", true, s.value.str());
    r.residual("S-tower Maurer-Cartan residual", flatten(s.mcResidual));
    r.residual("P s = ell", s.projectionResidual);
    return r;
}

Report quasiInverseReport(const HamiltonianStructure& H, const HamiltonianTriple& t, const VerifyOptions& o) {
    const int n = H.theory()->dim();
    const int top = std::min(n + 1, 3);
    QuasiInverse I(H, top);
    HamiltonianSampler smp(H, o.seed);
    Tally tally;
    for (int s = 0; s < o.samples; ++s) {
        std::vector<LocalForm> xs;
        for (int m = 1; m <= top; ++m) xs.push_back(smp.functional());
        tally.add("P I_1 = id", [&] { return functionalProjector(I.component({xs[0]})) - xs[0]; });
        for (int m = 2; m <= top; ++m) {
            std::vector<LocalForm> head(xs.begin(), xs.begin() + m);
            tally.add("P I_" + std::to_string(m) + " = 0", [&] { return functionalProjector(I.component(head)); });
        }
        for (int m = 1; m <= top; ++m) {
            std::vector<LocalForm> head(xs.begin(), xs.begin() + m);
            tally.add("L-infinity morphism, arity " + std::to_string(m),
                      std::function<Cone()>([&] { return I.morphismResidual(head); }));
        }
    }
    const LocalForm ell = functionalProjector(Cone::ofBody(t.L));
    const Cone pushed = I.pushMC(ell);
    const StandardMC s = standardMC(t, H);
    tally.add("pushed ell is Maurer-Cartan", std::function<Cone()>([&] { return maurerCartanResidual(sTower(H), pushed); }));
    tally.add("P I(ell) = ell", [&] { return functionalProjector(pushed) - ell; });
    tally.add("I(ell) = s + r with P r = 0", [&] { return functionalProjector(pushed - s.value); });
    Report r;
    tally.into(r);
    return r;
}

Report redefinitionReport(const HamiltonianTriple& t, const VerifyOptions& o) {
    const TheoryPtr& th = t.ambient.theory();
    const Field& Q = t.Q;
    const int n = th->dim();
    std::mt19937_64 rng(o.seed);
    Tally tally;
    const NoetherTotal base = noetherAndTotal(t);
    const LocalForm ell = functionalProjector(Cone::ofBody(t.L));
    for (int s = 0; s < o.samples; ++s) {
        LocalForm f = randomForm(th, rng, formSpec(0, n - 1, 1));
        HamiltonianTriple tf = redefineTriple(t, f);
        NoetherTotal nf = noetherAndTotal(tf);
        tally.flag("T_f preserves the triple", [&] { return tf.certified(); });
        tally.add("T_f shifts Delta by (dH - L_Q) f", [&] { return nf.Delta - base.Delta - descent(Q, f); });
        tally.add("T_f shifts LL by (dH - L_Q)(1 + L_E) f",
                  [&] { return nf.LL - base.LL - descent(Q, f + eulerGrading(f)); });
        tally.add("T_f keeps P L", [&] { return functionalProjector(Cone::ofBody(tf.L)) - ell; });

        LocalForm eta = randomForm(th, rng, formSpec(1, n, -2)) + randomForm(th, rng, formSpec(1, n - 1, -1));
        Redefinition lv = liouvilleRedefine(t, eta);
        NoetherTotal nl = noetherAndTotal(lv.triple);
        LocalForm g = contract(Q, eta);
        tally.flag("Liouville redefinition is certified", [&] { return lv.development.certified() && lv.triple.certified(); });
        tally.add("Liouville: dV theta = omega", [&] { return dV(lv.triple.theta) - lv.development.omega; });
        tally.add("Liouville: master equation", [&] { return masterResidual(lv.triple); });
        tally.add("Liouville shifts Delta by (dH - L_Q) iota_Q eta", [&] { return nl.Delta - base.Delta - descent(Q, g); });
        tally.add("Liouville shifts LL by (dH - L_Q) L_E iota_Q eta",
                  [&] { return nl.LL - base.LL - descent(Q, eulerGrading(g)); });

        Redefinition gl = globalRedefine(t, dV(eta));
        tally.flag("global redefinition with beta = dV eta is certified",
                   [&] { return gl.development.certified() && gl.triple.certified(); });
        tally.add("global and Liouville developments agree", [&] { return gl.development.omega - lv.development.omega; });
        tally.flag("classification of Liouville against global", [&] { return classify(lv.triple, gl.triple).ok(); });

        LocalForm gamma = randomForm(th, rng, formSpec(2, n - 1, -1));
        Redefinition adm = globalRedefine(t, dV(eta) + descent(Q, gamma));
        tally.flag("global redefinition with admissible beta is certified",
                   [&] { return adm.development.certified() && adm.triple.certified(); });

        TheorySpec lax;
        lax.name = "lax";
        lax.theory = th;
        lax.omega = t.ambient.omega;
        lax.Q = Q;
        LocalForm K = Rational(s + 1) * LocalForm::x(th, s % n) * LocalForm::volume(th);
        lax.L = t.L + dH(f) + K;
        HamiltonianTriple other = presentationTriple(lax, t.ambient);
        Classification c = classify(t, other);
        tally.flag("independent triple is certified", [&] { return other.certified(); });
        tally.add("classification: L' - L = dH F + K", [&] { return c.lagrangianResidual; });
        tally.add("classification: theta' - theta = dV F + dH gamma", [&] { return c.thetaResidual; });
        tally.add("classification recovers K", [&] { return c.K - K; });
    }
    Report r;
    tally.into(r);
    return r;
}

} // namespace vbc
