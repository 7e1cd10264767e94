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

RandomSpec probeSpec() {
    RandomSpec s;
    s.terms = 2;
    s.maxJetOrder = 2;
    s.maxJetFactors = 2;
    s.coeffRange = 2;
    return s;
}

struct Fixture {
    Model model;
    SymplecticDevelopment dev;
    HamiltonianStructure H;
    explicit Fixture(Model m) : model(std::move(m)), dev(buildDevelopment(model.omega, model.Q)), H(dev) {}
};

std::vector<Model> models() { return {particle(16), freeScalar2(16), chernSimons3(12)}; }

Cone sample(const Fixture& f, std::mt19937_64& rng) {
    int ped = f.dev.k + std::uniform_int_distribution<int>(-1, 2)(rng);
    return randomCone(f.model.theory, rng, ped, probeSpec());
}

LocalForm functional(const Fixture& f, std::mt19937_64& rng) {
    int g = f.dev.k + std::uniform_int_distribution<int>(0, 2)(rng);
    return randomFunctional(f.model.theory, rng, g, probeSpec());
}

bool sameField(const Field& a, const Field& b) {
    for (int i = 0; i < a.theory()->fieldCount(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

Field signedBracket(const HamiltonianStructure& H, const Cone& a, const Cone& b) {
    Field br = bracket(H.hamiltonianField(a), H.hamiltonianField(b));
    return ((H.degree(a) + 1) % 2 != 0) ? Rational(-1) * br : br;
}

} // namespace

TEST(Development, ZeroFieldLeavesOmega) {
    Model m = particle();
    auto dev = buildDevelopment(m.omega, Field(m.theory, 1));
    EXPECT_EQ(dev.omega, m.omega);
    EXPECT_TRUE(dev.certified());
}

TEST(Development, ParticleHasOneCorrection) {
    Model m = particle();
    auto dev = buildDevelopment(m.omega, m.Q);
    ASSERT_TRUE(dev.certified());
    EXPECT_EQ(dev.anchor(), m.omega);
    LocalForm w1 = dev.component(1);
    ASSERT_EQ(w1.size(), 1u);
    const Theory& th = *m.theory;
    const Word& w = w1.terms().begin()->first;
    ASSERT_EQ(w.size(), 2u);
    EXPECT_EQ(w[0], Gen::vertical(th, 0, {}));
    EXPECT_EQ(w[1], Gen::vertical(th, 0, idx(0)));
    EXPECT_EQ(dev.omega, m.omega + w1);
}

TEST(Development, CertifiedForAllModels) {
    for (const auto& m : builtinModels()) {
        auto dev = buildDevelopment(m.omega, m.Q);
        EXPECT_TRUE(dev.dVResidual.isZero()) << m.name;
        EXPECT_TRUE(dev.descentResidual.isZero()) << m.name;
        EXPECT_EQ(dev.k, -1);
    }
}

TEST(Development, RejectsIncompatibleData) {
    for (const auto& m : brokenModels()) EXPECT_THROW(buildDevelopment(m.omega, m.Q), DevelopmentError) << m.name;
}

TEST(Development, AlternativeHomotopyDiffersByDescentExactTerm) {
    for (const auto& m : builtinModels()) {
        auto a = buildDevelopment(m.omega, m.Q);
        auto b = buildDevelopment(m.omega, m.Q, [](const LocalForm& x) { return shiftedHorizontalHomotopy(x); });
        ASSERT_TRUE(b.certified()) << m.name;
        LocalForm eta = developmentGauge(a, b);
        EXPECT_EQ(b.omega - a.omega, dH(eta) - lie(m.Q, eta)) << m.name;
        if (m.theory->dim() == 1) EXPECT_EQ(a.omega, b.omega);
    }
    Model cs = chernSimons3();
    auto a = buildDevelopment(cs.omega, cs.Q);
    auto b = buildDevelopment(cs.omega, cs.Q, [](const LocalForm& x) { return shiftedHorizontalHomotopy(x); });
    EXPECT_NE(a.omega, b.omega);
}

TEST(HamiltonianField, ParticleLagrangian) {
    Model m = particle();
    Fixture f(m);
    LocalForm xt = LocalForm::jet(m.theory, "x", idx(0));
    LocalForm F = Rational(1, 2) * xt * xt * LocalForm::volume(m.theory);
    Field X = f.H.hamiltonianField(F);
    EXPECT_EQ(X.ghost(), 1);
    EXPECT_TRUE(X.component("x").isZero());
    // Pi dV F = -x_tt dx dt and iota_X omega = X^{x+} dx dt
    EXPECT_EQ(X.component("x+"), -LocalForm::jet(m.theory, "x", idx(0, 2)));
    EXPECT_TRUE(f.H.hamiltonianResidual(Cone::ofBody(F), X).isZero());
}

TEST(HamiltonianField, ExactAndLowDegreeBodiesHaveZeroField) {
    std::mt19937_64 rng(101);
    for (const auto& m : models()) {
        Fixture f(m);
        const int n = m.theory->dim();
        for (int t = 0; t < 5; ++t) {
            RandomSpec s = probeSpec();
            s.vfd = 0;
            s.hfd = n - 1;
            s.ghd = f.dev.k + 1;
            LocalForm g = randomForm(m.theory, rng, s);
            LocalForm K = LocalForm::x(m.theory, 0) * LocalForm::volume(m.theory);
            EXPECT_TRUE(f.H.hamiltonianField(dH(g) + K).isZero());
            EXPECT_TRUE(f.H.hamiltonianField(g).isZero());
        }
    }
}

TEST(HamiltonianField, ResolvesSeededInputs) {
    std::mt19937_64 rng(102);
    for (const auto& m : models()) {
        Fixture f(m);
        for (int t = 0; t < 20; ++t) {
            Cone c = sample(f, rng);
            EXPECT_TRUE(f.H.hamiltonianResidual(c, f.H.hamiltonianField(c)).isZero()) << m.name;
        }
    }
}

TEST(Brackets, GradedSymmetryInShiftedDegree) {
    std::mt19937_64 rng(103);
    for (const auto& m : models()) {
        Fixture f(m);
        const auto& H = f.H;
        for (int t = 0; t < 20; ++t) {
            Cone a = sample(f, rng), b = sample(f, rng);
            Rational s = H.symmetrySign(a, b);
            EXPECT_EQ(H.bracketS(a, b), s * H.bracketS(b, a)) << m.name;
            EXPECT_EQ(H.bracketA(a, b), s * H.bracketA(b, a)) << m.name;
            EXPECT_EQ(H.bracketB(a, b), s * H.bracketB(b, a)) << m.name;
        }
    }
}

TEST(Brackets, AgreeAfterProjection) {
    std::mt19937_64 rng(104);
    for (const auto& m : models()) {
        Fixture f(m);
        for (int t = 0; t < 20; ++t) {
            Cone a = sample(f, rng), b = sample(f, rng);
            Cone S = f.H.bracketS(a, b);
            EXPECT_TRUE(functionalProjector(S - f.H.bracketB(a, b)).isZero()) << m.name;
            EXPECT_TRUE(functionalProjector(S - f.H.bracketA(a, b)).isZero()) << m.name;
        }
    }
}

TEST(Brackets, ExactArgument) {
    std::mt19937_64 rng(105);
    for (const auto& m : models()) {
        Fixture f(m);
        const int n = m.theory->dim();
        for (int t = 0; t < 5; ++t) {
            RandomSpec s = probeSpec();
            s.vfd = 0;
            s.hfd = n - 1;
            s.ghd = f.dev.k + 1;
            Cone e = Cone::ofBody(dH(randomForm(m.theory, rng, s)));
            Cone b = sample(f, rng);
            EXPECT_TRUE(f.H.bracketS(e, b).isZero());
            // A and B keep the dH-exact term L_{X_b} e
            EXPECT_TRUE(functionalProjector(f.H.bracketA(e, b)).isZero());
            EXPECT_TRUE(functionalProjector(f.H.bracketB(e, b)).isZero());
            Cone half = Rational(1, 2) * Cone::ofBody(lie(f.H.hamiltonianField(b), e.body));
            EXPECT_EQ(f.H.bracketA(e, b), Rational(f.H.symmetrySign(e, b)) * half);
        }
    }
}

TEST(Brackets, VectorFieldCompatibility) {
    std::mt19937_64 rng(106);
    for (const auto& m : models()) {
        Fixture f(m);
        const auto& H = f.H;
        int nonzero = 0;
        for (int t = 0; t < 20; ++t) {
            Cone a = sample(f, rng), b = sample(f, rng);
            Field expected = signedBracket(H, a, b);
            nonzero += !expected.isZero();
            EXPECT_TRUE(sameField(H.hamiltonianField(H.bracketS(a, b)), expected)) << m.name;
            EXPECT_TRUE(sameField(H.hamiltonianField(H.bracketA(a, b)), expected)) << m.name;
            EXPECT_TRUE(sameField(H.hamiltonianField(H.bracketB(a, b)), expected)) << m.name;
        }
        EXPECT_GT(nonzero, 0) << m.name;
    }
}

TEST(Jacobiator, BVanishesAndSIsKilledByProjection) {
    std::mt19937_64 rng(107);
    for (const auto& m : models()) {
        Fixture f(m);
        const auto& H = f.H;
        auto S = [&H](const Cone& u, const Cone& v) { return H.bracketS(u, v); };
        auto A = [&H](const Cone& u, const Cone& v) { return H.bracketA(u, v); };
        auto B = [&H](const Cone& u, const Cone& v) { return H.bracketB(u, v); };
        for (int t = 0; t < (m.theory->dim() == 3 ? 6 : 20); ++t) {
            Cone a = sample(f, rng), b = sample(f, rng), c = sample(f, rng);
            EXPECT_TRUE(H.jacobiator(B, a, b, c).isZero()) << m.name;
            EXPECT_TRUE(functionalProjector(H.jacobiator(S, a, b, c)).isZero()) << m.name;
            EXPECT_TRUE(functionalProjector(H.jacobiator(A, a, b, c)).isZero()) << m.name;
        }
    }
}

TEST(Jacobiator, ThreeBracketIsNontrivialOnParticle) {
    std::mt19937_64 rng(108);
    Fixture f(particle(24));
    RandomSpec s = probeSpec();
    s.terms = 3;
    s.maxJetFactors = 3;
    int nonzero = 0;
    for (int t = 0; t < 10; ++t) {
        Cone a = randomCone(f.model.theory, rng, f.dev.k, s), b = randomCone(f.model.theory, rng, f.dev.k, s),
             c = randomCone(f.model.theory, rng, f.dev.k + 1, s);
        nonzero += !f.H.threeBracketS(a, b, c).isZero();
        EXPECT_TRUE(jacobiResidual(sTower(f.H), {a, b, c}).isZero());
    }
    EXPECT_GT(nonzero, 0);
}

TEST(Jacobiator, ThreeBracketVanishesOnImageOfHTilde) {
    std::mt19937_64 rng(109);
    for (const auto& m : models()) {
        Fixture f(m);
        for (int t = 0; t < 5; ++t) {
            Cone h = f.H.perturbed().hTilde(sample(f, rng));
            EXPECT_TRUE(f.H.threeBracketS(h, sample(f, rng), sample(f, rng)).isZero());
        }
    }
}

TEST(GeneralizedJacobi, STowerArities1To3) {
    std::mt19937_64 rng(110);
    for (const auto& m : models()) {
        Fixture f(m);
        auto L = sTower(f.H);
        for (int t = 0; t < 20; ++t) {
            Cone a = sample(f, rng), b = sample(f, rng), c = sample(f, rng);
            EXPECT_TRUE(jacobiResidual(L, {a}).isZero()) << m.name;
            EXPECT_TRUE(jacobiResidual(L, {a, b}).isZero()) << m.name;
            if (m.theory->dim() < 3 || t < 6) EXPECT_TRUE(jacobiResidual(L, {a, b, c}).isZero()) << m.name;
        }
    }
}

TEST(GeneralizedJacobi, STowerArity4) {
    std::mt19937_64 rng(111);
    for (const auto& m : {particle(16), freeScalar2(16)}) {
        Fixture f(m);
        auto L = sTower(f.H);
        for (int t = 0; t < 3; ++t) {
            std::vector<Cone> xs;
            for (int j = 0; j < 4; ++j) xs.push_back(sample(f, rng));
            EXPECT_TRUE(jacobiResidual(L, xs).isZero()) << m.name;
        }
    }
}

TEST(GeneralizedJacobi, BStructure) {
    std::mt19937_64 rng(112);
    for (const auto& m : models()) {
        Fixture f(m);
        auto L = bStructure(f.H);
        for (int t = 0; t < 10; ++t) {
            Cone a = sample(f, rng), b = sample(f, rng), c = sample(f, rng);
            EXPECT_TRUE(jacobiResidual(L, {a, b}).isZero()) << m.name;
            EXPECT_TRUE(jacobiResidual(L, {a, b, c}).isZero()) << m.name;
        }
    }
}

TEST(GeneralizedJacobi, ShuffleEnumeration) {
    EXPECT_EQ(unshuffles(4, 2).size(), 6u);
    EXPECT_EQ(unshuffles(3, 1).size(), 3u);
    EXPECT_EQ(setPartitions(4, 2).size(), 7u);
    EXPECT_EQ(setPartitions(4, 3).size(), 6u);
    EXPECT_EQ(setPartitions(3, 3).size(), 1u);
    // (x1 x2 x3) -> (x2, x1, x3) with x1, x2 odd
    EXPECT_EQ(koszulSign<int>({1, 1, 0}, {1, 0, 2}), -1);
    EXPECT_EQ(koszulSign<int>({1, 0, 1}, {2, 0, 1}), -1);
    EXPECT_EQ(koszulSign<int>({1, 2, 1}, {1, 0, 2}), 1);
}

TEST(HamAlgebra, DifferentialGradedLieAxioms) {
    std::mt19937_64 rng(113);
    for (const auto& m : models()) {
        Fixture f(m);
        auto F = hamAlgebra(f.H);
        for (int t = 0; t < 10; ++t) {
            LocalForm x = functional(f, rng), y = functional(f, rng), z = functional(f, rng);
            EXPECT_TRUE(isLocalFunctional(x));
            EXPECT_TRUE(f.H.dHam(f.H.dHam(x)).isZero()) << m.name;
            Rational s = f.H.symmetrySign(Cone::ofBody(x), Cone::ofBody(y));
            EXPECT_EQ(f.H.bracketHam(x, y), s * f.H.bracketHam(y, x)) << m.name;
            EXPECT_TRUE(isLocalFunctional(f.H.bracketHam(x, y)));
            EXPECT_TRUE(jacobiResidual(F, {x, y}).isZero()) << m.name;
            EXPECT_TRUE(jacobiResidual(F, {x, y, z}).isZero()) << m.name;
        }
    }
}

TEST(HamAlgebra, ProjectionIsStrictMorphism) {
    std::mt19937_64 rng(114);
    for (const auto& m : models()) {
        Fixture f(m);
        for (int t = 0; t < 10; ++t) {
            Cone a = sample(f, rng), b = sample(f, rng);
            LocalForm lhs = functionalProjector(f.H.bracketS(a, b));
            LocalForm rhs = f.H.bracketHam(functionalProjector(a), functionalProjector(b));
            EXPECT_EQ(lhs, rhs) << m.name;
        }
    }
}

TEST(HamAlgebra, LaxPresentationIsMaurerCartan) {
    std::mt19937_64 rng(115);
    for (const auto& m : models()) {
        Fixture f(m);
        HamiltonianTriple t = canonicalTriple(f.dev);
        LocalForm ell = functionalProjector(Cone::ofBody(t.L));
        EXPECT_TRUE(f.H.bracketHam(ell, ell).isZero()) << m.name;
        EXPECT_TRUE(f.H.dHam(ell).isZero()) << m.name;
        for (int j = 0; j < 5; ++j) {
            LocalForm x = functional(f, rng);
            EXPECT_EQ(f.H.dHam(x), -f.H.bracketHam(ell, x)) << m.name;
        }
    }
}

TEST(QuasiInverse, ProjectionConditionsAndMorphism) {
    std::mt19937_64 rng(116);
    for (const auto& m : models()) {
        Fixture f(m);
        QuasiInverse I(f.H, m.theory->dim() + 1);
        for (int t = 0; t < 5; ++t) {
            LocalForm x = functional(f, rng), y = functional(f, rng), z = functional(f, rng);
            EXPECT_EQ(functionalProjector(I.component({x})), x) << m.name;
            EXPECT_TRUE(functionalProjector(I.component({x, y})).isZero()) << m.name;
            EXPECT_TRUE(I.morphismResidual({x}).isZero()) << m.name;
            EXPECT_TRUE(I.morphismResidual({x, y}).isZero()) << m.name;
            if (m.theory->dim() >= 2) {
                EXPECT_TRUE(functionalProjector(I.component({x, y, z})).isZero()) << m.name;
                EXPECT_TRUE(I.morphismResidual({x, y, z}).isZero()) << m.name;
            }
        }
    }
}

TEST(QuasiInverse, ZeroFieldGivesInclusion) {
    std::mt19937_64 rng(117);
    Model m = particle();
    auto dev = buildDevelopment(m.omega, Field(m.theory, 1));
    HamiltonianStructure H(dev);
    QuasiInverse I(H, 2);
    for (int t = 0; t < 5; ++t) {
        LocalForm x = randomFunctional(m.theory, rng, 0, probeSpec());
        EXPECT_EQ(I.component({x}), include(x));
    }
    EXPECT_THROW(QuasiInverse(H, 3), std::invalid_argument);
}

TEST(QuasiInverse, PushedMaurerCartanDecomposes) {
    for (const auto& m : models()) {
        Fixture f(m);
        HamiltonianTriple t = canonicalTriple(f.dev);
        LocalForm ell = functionalProjector(Cone::ofBody(t.L));
        QuasiInverse I(f.H, m.theory->dim() + 1);
        Cone pushed = I.pushMC(ell);
        EXPECT_EQ(functionalProjector(pushed), ell) << m.name;
        EXPECT_TRUE(maurerCartanResidual(sTower(f.H), pushed).isZero()) << m.name;
        StandardMC s = standardMC(t, f.H);
        Cone r = pushed - s.value;
        EXPECT_TRUE(functionalProjector(r).isZero()) << m.name;
    }
}

TEST(Twisting, ZeroElementLeavesStructure) {
    std::mt19937_64 rng(118);
    Fixture f(freeScalar2());
    auto L = sTower(f.H);
    auto T = twist(L, Cone());
    for (int t = 0; t < 5; ++t) {
        Cone a = sample(f, rng), b = sample(f, rng);
        EXPECT_EQ(T.bracket({a}), L.bracket({a}));
        EXPECT_EQ(T.bracket({a, b}), L.bracket({a, b}));
    }
}

TEST(Twisting, TwistedDifferentialSquaresToZero) {
    std::mt19937_64 rng(119);
    for (const auto& m : models()) {
        Fixture f(m);
        HamiltonianTriple t = canonicalTriple(f.dev);
        Cone a = standardMC(t, f.H).value;
        auto T = twist(sTower(f.H), a);
        for (int j = 0; j < 5; ++j) {
            Cone c = sample(f, rng);
            EXPECT_TRUE(T.bracket({T.bracket({c})}).isZero()) << m.name;
        }
    }
}

TEST(Twisting, UnperturbedTowerTwistedByPushedLagrangian) {
    std::mt19937_64 rng(120);
    for (const auto& m : models()) {
        auto dev = buildDevelopment(m.omega, m.Q);
        HamiltonianTriple t = canonicalTriple(dev);
        auto dev0 = buildDevelopment(m.omega, Field(m.theory, 1));
        HamiltonianStructure H0(dev0);
        LocalForm ell = functionalProjector(Cone::ofBody(t.L));
        QuasiInverse I0(H0, m.theory->dim() + 1);
        Cone a = I0.pushMC(ell);
        auto L0 = sTower(H0);
        ASSERT_TRUE(maurerCartanResidual(L0, a).isZero()) << m.name;
        auto T = twist(L0, a);
        Cone lag(LocalForm(m.theory), t.L);
        for (int j = 0; j < 5; ++j) {
            int ped = dev.k + std::uniform_int_distribution<int>(-1, 2)(rng);
            Cone c = randomCone(m.theory, rng, ped, probeSpec());
            Cone expected = L0.bracket({c}) + L0.bracket({lag, c}) + Rational(1, 2) * L0.bracket({lag, lag, c});
            EXPECT_TRUE(functionalProjector(T.bracket({c}) - expected).isZero()) << m.name;
            EXPECT_TRUE(T.bracket({T.bracket({c})}).isZero()) << m.name;
        }
    }
}
