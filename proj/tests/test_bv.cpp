#include <gtest/gtest.h>

#include "vbc/bv.hpp"
#include "vbc/random.hpp"

using namespace vbc;

namespace {

MultiIndex idx(int i, int k = 1) {
    MultiIndex I{};
    I[i] = k;
    return I;
}

RandomSpec spec(int vfd, int hfd, int ghd) {
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

LocalForm descent(const Field& Q, const LocalForm& x) { return dH(x) - lie(Q, x); }

// Q^u = c, Q^c = e is Hamiltonian for this omega but [Q,Q]^u = 2e
TheorySpec nonCohomological() {
    auto th = makeTheory(1, {{"u", 0}, {"c", 1}, {"e", 2}, {"u+", -1}, {"c+", -2}, {"e+", -3}}, {"t"});
    TheorySpec s;
    s.name = "noncohomological";
    s.theory = th;
    LocalForm vol = LocalForm::volume(th);
    s.omega = LocalForm::vertical(th, "u+") * LocalForm::vertical(th, "u") * vol +
              LocalForm::vertical(th, "c+") * LocalForm::vertical(th, "c") * vol +
              LocalForm::vertical(th, "e+") * LocalForm::vertical(th, "e") * vol;
    s.Q = Field(th, 1);
    s.Q.set("u", LocalForm::jet(th, "c"));
    s.Q.set("c", LocalForm::jet(th, "e"));
    s.Q.set("c+", -LocalForm::jet(th, "u+"));
    s.Q.set("e+", LocalForm::jet(th, "c+"));
    return s;
}

const CheckEntry* entry(const Report& r, const std::string& name) {
    for (const auto& e : r.entries)
        if (e.name == name) return &e;
    return nullptr;
}

} // namespace

TEST(Compatibility, ModelsPass) {
    for (const auto& m : builtinModels()) {
        Report r = checkCompatibility(TheorySpec::fromModel(m));
        EXPECT_TRUE(r.ok()) << m.name;
    }
}

TEST(Compatibility, NegativeControlsReportResiduals) {
    Report nv = checkCompatibility(TheorySpec::fromModel(nonVariationalParticle()));
    const CheckEntry* e = entry(nv, "Pi L_Q omega = 0");
    ASSERT_NE(e, nullptr);
    EXPECT_FALSE(e->pass);
    EXPECT_FALSE(e->residual.isZero());

    Report nc = checkCompatibility(TheorySpec::fromModel(nonClosedParticle()));
    e = entry(nc, "dV omega = 0");
    ASSERT_NE(e, nullptr);
    EXPECT_FALSE(e->pass);
    EXPECT_FALSE(nc.ok());
}

TEST(Compatibility, NamesNonzeroComponentOfQSquared) {
    TheorySpec s = nonCohomological();
    Report r = checkCompatibility(s);
    const CheckEntry* e = entry(r, "[Q,Q] = 0");
    ASSERT_NE(e, nullptr);
    EXPECT_FALSE(e->pass);
    EXPECT_EQ(e->detail, "component u");
    EXPECT_EQ(e->residual, Rational(2) * LocalForm::jet(s.theory, "e"));
}

TEST(Compatibility, DeclaredPairingMustMatch) {
    TheorySpec s = TheorySpec::fromModel(particle());
    s.pairing = std::vector<std::vector<Rational>>{{0, 1}, {1, 0}};
    EXPECT_TRUE(checkCompatibility(s).ok());
    s.pairing = std::vector<std::vector<Rational>>{{0, 1}, {-1, 0}};
    EXPECT_FALSE(checkCompatibility(s).ok());
}

TEST(CanonicalTriple, ParticleLagrangian) {
    Model m = particle();
    auto t = canonicalTriple(buildDevelopment(m.omega, m.Q));
    EXPECT_TRUE(t.certified());
    LocalForm expected = Rational(1, 2) * LocalForm::jet(m.theory, "x") * LocalForm::jet(m.theory, "x", idx(0, 2)) *
                         LocalForm::volume(m.theory);
    EXPECT_EQ(projectHfd(t.L, 1), expected);
    // any Lagrangian for Q^{x+} = x_tt differs from -1/2 x_t^2 by an exact term
    LocalForm xt = LocalForm::jet(m.theory, "x", idx(0));
    LocalForm kinetic = Rational(-1, 2) * xt * xt * LocalForm::volume(m.theory);
    EXPECT_TRUE(functionalProjector(Cone::ofBody(t.L - kinetic)).isZero());
}

TEST(CanonicalTriple, ZeroField) {
    Model m = chernSimons3();
    auto t = canonicalTriple(buildDevelopment(m.omega, Field(m.theory, 1)));
    EXPECT_TRUE(t.L.isZero());
    EXPECT_EQ(t.theta, verticalHomotopy(m.omega));
    NoetherTotal nt = noetherAndTotal(t);
    EXPECT_TRUE(nt.Delta.isZero());
    EXPECT_TRUE(nt.LL.isZero());
}

TEST(CanonicalTriple, CertifiedAndRecoversDescent) {
    for (const auto& m : builtinModels()) {
        auto t = canonicalTriple(buildDevelopment(m.omega, m.Q));
        EXPECT_TRUE(t.residual().isZero()) << m.name;
        EXPECT_TRUE(descentFromTriple(t).isZero()) << m.name;
    }
}

TEST(CanonicalTriple, RejectsUncertifiedDevelopment) {
    Model m = particle();
    auto dev = certifyDevelopment(m.omega, -1, m.Q);
    EXPECT_FALSE(dev.certified());
    EXPECT_THROW(canonicalTriple(dev), DevelopmentError);
}

TEST(MasterEquation, ModelsSatisfyBoth) {
    for (const auto& m : builtinModels()) {
        auto t = canonicalTriple(buildDevelopment(m.omega, m.Q));
        Report r = masterEquation(t);
        EXPECT_EQ(r.entries.size(), 2u);
        EXPECT_TRUE(r.ok()) << m.name;
    }
}

TEST(MasterEquation, NonCohomologicalFieldFails) {
    TheorySpec s = nonCohomological();
    HamiltonianTriple t;
    t.Q = s.Q;
    t.ambient = certifyDevelopment(s.omega, -1, s.Q);
    t.theta = verticalHomotopy(s.omega);
    t.L = verticalHomotopy(contract(s.Q, s.omega) - dH(t.theta));
    EXPECT_TRUE(t.residual().isZero());
    EXPECT_FALSE(masterResidual(t).isZero());
    EXPECT_FALSE(masterEquation(t).ok());
}

TEST(Noether, DescentAndLepage) {
    for (const auto& m : builtinModels()) {
        auto t = canonicalTriple(buildDevelopment(m.omega, m.Q));
        EXPECT_TRUE(noetherReport(t).ok()) << m.name;
    }
}

TEST(Noether, CollapseDropsGhostsAndAntifields) {
    Model m = chernSimons3();
    auto th = m.theory;
    LocalForm x = LocalForm::jet(th, "A1") * LocalForm::vertical(th, "A2") +
                  LocalForm::jet(th, "c") * LocalForm::vertical(th, "A1") +
                  LocalForm::jet(th, "A1+", idx(1)) * LocalForm::vertical(th, "A3");
    EXPECT_EQ(collapseToGhostZero(x), LocalForm::jet(th, "A1") * LocalForm::vertical(th, "A2"));
}

TEST(StandardMC, ResidualsVanish) {
    for (const auto& m : builtinModels()) {
        auto dev = buildDevelopment(m.omega, m.Q);
        HamiltonianStructure H(dev);
        auto s = standardMC(canonicalTriple(dev), H);
        EXPECT_TRUE(s.mcResidual.isZero()) << m.name;
        EXPECT_TRUE(s.projectionResidual.isZero()) << m.name;
    }
}

TEST(StandardMC, ZeroFieldIsZero) {
    Model m = particle();
    auto dev = buildDevelopment(m.omega, Field(m.theory, 1));
    HamiltonianStructure H(dev);
    EXPECT_TRUE(standardMC(canonicalTriple(dev), H).value.isZero());
}

TEST(Redefinition, TripleRedefinitionShiftsClasses) {
    std::mt19937_64 rng(201);
    for (const auto& m : builtinModels()) {
        auto t = canonicalTriple(buildDevelopment(m.omega, m.Q));
        const int n = m.theory->dim();
        EXPECT_EQ(redefineTriple(t, LocalForm(m.theory)).L, t.L);
        for (int j = 0; j < 5; ++j) {
            LocalForm f = randomForm(m.theory, rng, spec(0, n - 1, 1));
            auto t2 = redefineTriple(t, f);
            EXPECT_TRUE(t2.certified()) << m.name;
            auto a = noetherAndTotal(t), b = noetherAndTotal(t2);
            EXPECT_EQ(b.Delta - a.Delta, descent(m.Q, f)) << m.name;
            EXPECT_EQ(b.LL - a.LL, descent(m.Q, f + eulerGrading(f))) << m.name;
            EXPECT_EQ(functionalProjector(Cone::ofBody(t2.L)), functionalProjector(Cone::ofBody(t.L)));
        }
        EXPECT_THROW(redefineTriple(t, LocalForm::volume(m.theory)), std::invalid_argument);
    }
}

TEST(Redefinition, Liouville) {
    std::mt19937_64 rng(202);
    for (const auto& m : builtinModels()) {
        auto t = canonicalTriple(buildDevelopment(m.omega, m.Q));
        const int n = m.theory->dim();
        auto same = liouvilleRedefine(t, LocalForm(m.theory));
        EXPECT_EQ(same.triple.L, t.L);
        EXPECT_EQ(same.triple.theta, t.theta);
        for (int j = 0; j < 3; ++j) {
            LocalForm eta = randomForm(m.theory, rng, spec(1, n, -2)) + randomForm(m.theory, rng, spec(1, n - 1, -1));
            auto r = liouvilleRedefine(t, eta);
            EXPECT_TRUE(r.development.certified()) << m.name;
            EXPECT_TRUE(r.triple.certified()) << m.name;
            EXPECT_EQ(dV(r.triple.theta), r.development.omega) << m.name;
            EXPECT_TRUE(masterResidual(r.triple).isZero()) << m.name;
            // class shifts are (dH - L_Q)-exact with explicit potentials
            LocalForm g = contract(m.Q, eta);
            auto a = noetherAndTotal(t), b = noetherAndTotal(r.triple);
            EXPECT_EQ(b.Delta - a.Delta, descent(m.Q, g)) << m.name;
            EXPECT_EQ(b.LL - a.LL, descent(m.Q, eulerGrading(g))) << m.name;
        }
    }
}

TEST(Redefinition, GlobalMatchesLiouvilleUpToClassification) {
    std::mt19937_64 rng(203);
    for (const auto& m : builtinModels()) {
        auto t = canonicalTriple(buildDevelopment(m.omega, m.Q));
        const int n = m.theory->dim();
        auto same = globalRedefine(t, LocalForm(m.theory));
        EXPECT_EQ(same.triple.L, t.L);
        EXPECT_EQ(same.triple.theta, t.theta);
        LocalForm eta = randomForm(m.theory, rng, spec(1, n, -2)) + randomForm(m.theory, rng, spec(1, n - 1, -1));
        auto lv = liouvilleRedefine(t, eta);
        auto gl = globalRedefine(t, dV(eta));
        EXPECT_EQ(gl.development.omega, lv.development.omega) << m.name;
        EXPECT_TRUE(gl.triple.certified()) << m.name;
        Classification c = classify(lv.triple, gl.triple);
        EXPECT_TRUE(c.ok()) << m.name;
    }
}

TEST(Redefinition, GlobalWithAdmissibleBeta) {
    std::mt19937_64 rng(204);
    for (const auto& m : {particle(), freeScalar2()}) {
        auto t = canonicalTriple(buildDevelopment(m.omega, m.Q));
        const int n = m.theory->dim();
        for (int j = 0; j < 3; ++j) {
            LocalForm eta = randomForm(m.theory, rng, spec(1, n, -2));
            LocalForm gamma = randomForm(m.theory, rng, spec(2, n - 1, -1));
            LocalForm beta = dV(eta) + descent(m.Q, gamma);
            auto r = globalRedefine(t, beta);
            EXPECT_TRUE(r.development.certified()) << m.name;
            EXPECT_TRUE(r.triple.certified()) << m.name;
            EXPECT_TRUE(masterResidual(r.triple).isZero()) << m.name;
        }
    }
}

TEST(Redefinition, GlobalDetectsInadmissibleBeta) {
    Model m = particle();
    auto t = canonicalTriple(buildDevelopment(m.omega, m.Q));
    auto th = m.theory;
    // beta of hfd 0: Pi dV beta^0 = 0 holds trivially but (dH - L_Q) dV beta does not vanish
    LocalForm beta = LocalForm::jet(th, "x") * LocalForm::vertical(th, "x", idx(0)) *
                     LocalForm::vertical(th, "x", idx(0, 2));
    auto r = globalRedefine(t, beta);
    EXPECT_FALSE(r.development.dVResidual.isZero());
    EXPECT_FALSE(r.triple.certified());
    LocalForm bad = LocalForm::jet(th, "x", idx(0)) * LocalForm::vertical(th, "x+") * LocalForm::vertical(th, "x") *
                    LocalForm::volume(th);
    EXPECT_THROW(globalRedefine(t, bad), DevelopmentError);
}

TEST(Classification, IndependentTriplesOverSameDevelopment) {
    std::mt19937_64 rng(205);
    for (const auto& m : builtinModels()) {
        auto dev = buildDevelopment(m.omega, m.Q);
        auto canon = canonicalTriple(dev);
        const int n = m.theory->dim();
        LocalForm f = randomForm(m.theory, rng, spec(0, n - 1, 1));
        LocalForm K = LocalForm::x(m.theory, 0) * LocalForm::volume(m.theory);
        TheorySpec s = TheorySpec::fromModel(m);
        s.L = canon.L + dH(f) + K;
        auto lax = presentationTriple(s, dev);
        ASSERT_TRUE(lax.certified()) << m.name;
        Classification c = classify(canon, lax);
        EXPECT_TRUE(c.ok()) << m.name;
        EXPECT_EQ(c.K, K) << m.name;
        EXPECT_TRUE(projectHfd(c.F, n).isZero()) << m.name;
        EXPECT_TRUE(functionalProjector(Cone::ofBody(lax.L - canon.L)).isZero());
    }
}

TEST(Presentation, UserThetaDefinesDevelopment) {
    Model m = freeScalar2();
    auto dev = buildDevelopment(m.omega, m.Q);
    auto canon = canonicalTriple(dev);
    TheorySpec s = TheorySpec::fromModel(m);
    s.theta = canon.theta;
    auto t = presentationTriple(s, dev);
    EXPECT_EQ(t.ambient.omega, dev.omega);
    EXPECT_EQ(t.L, canon.L);
    EXPECT_TRUE(t.certified());
}

TEST(Momentum, MultisymplecticIdentities) {
    for (const auto& m : builtinModels()) {
        auto t = canonicalTriple(buildDevelopment(m.omega, m.Q));
        Report r = checkMultisymplectic(t);
        EXPECT_TRUE(r.ok()) << m.name;
        EXPECT_EQ(momentumMap(t).lambda, t.L + t.theta);
    }
}

TEST(Momentum, ZeroFieldBookkeeping) {
    Model m = freeScalar2();
    auto t = canonicalTriple(buildDevelopment(m.omega, Field(m.theory, 1)));
    EXPECT_EQ(dV(t.theta) + dH(t.theta), m.omega);
    EXPECT_TRUE(checkMultisymplectic(t).ok());
}
