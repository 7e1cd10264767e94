#include "vbc/random.hpp"

#include <algorithm>

namespace vbc {

namespace {

int uniformInt(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

MultiIndex randomIndex(const Theory& th, std::mt19937_64& rng, int maxOrder) {
    MultiIndex I{};
    int ord = uniformInt(rng, 0, maxOrder);
    for (int k = 0; k < ord; ++k) ++I[uniformInt(rng, 0, th.dim() - 1)];
    return I;
}

Rational randomCoeff(std::mt19937_64& rng, int range) {
    int num = 0;
    while (num == 0) num = uniformInt(rng, -range, range);
    int den = uniformInt(rng, 1, 2);
    return Rational(num, den);
}

LocalForm randomMonomial(const TheoryPtr& th, std::mt19937_64& rng, const RandomSpec& spec, int vfd, int hfd) {
    Word w;
    int nj = uniformInt(rng, 0, spec.maxJetFactors);
    for (int k = 0; k < nj; ++k)
        w.push_back(Gen::jet(*th, uniformInt(rng, 0, th->fieldCount() - 1), randomIndex(*th, rng, spec.maxJetOrder)));
    if (spec.baseCoordinates && uniformInt(rng, 0, 3) == 0) w.push_back(Gen::base(uniformInt(rng, 0, th->dim() - 1)));
    for (int k = 0; k < vfd; ++k)
        w.push_back(Gen::vertical(*th, uniformInt(rng, 0, th->fieldCount() - 1), randomIndex(*th, rng, spec.maxJetOrder)));
    std::vector<int> coords(th->dim());
    for (int i = 0; i < th->dim(); ++i) coords[i] = i;
    std::shuffle(coords.begin(), coords.end(), rng);
    for (int k = 0; k < hfd; ++k) w.push_back(Gen::horizontal(coords[k]));
    return LocalForm::normalize(th, w, randomCoeff(rng, spec.coeffRange));
}

} // namespace

LocalForm randomForm(const TheoryPtr& th, std::mt19937_64& rng, const RandomSpec& spec) {
    LocalForm out(th);
    for (int t = 0; t < spec.terms; ++t) {
        for (int attempt = 0; attempt < 200; ++attempt) {
            int vfd = spec.vfd ? *spec.vfd : uniformInt(rng, 0, 2);
            int hfd = spec.hfd ? *spec.hfd : uniformInt(rng, 0, th->dim());
            LocalForm m = randomMonomial(th, rng, spec, vfd, hfd);
            if (m.isZero()) continue;
            if (spec.ghd && wordDegrees(*th, m.terms().begin()->first).ghd != *spec.ghd) continue;
            out += m;
            break;
        }
    }
    return out;
}

Field randomField(const TheoryPtr& th, std::mt19937_64& rng, int ghost, const RandomSpec& spec) {
    Field X(th, ghost);
    RandomSpec s = spec;
    s.vfd = 0;
    s.hfd = 0;
    for (int a = 0; a < th->fieldCount(); ++a) {
        s.ghd = ghost + th->field(a).ghost;
        X.set(a, randomForm(th, rng, s));
    }
    return X;
}

Cone randomCone(const TheoryPtr& th, std::mt19937_64& rng, int ped, const RandomSpec& spec) {
    const int n = th->dim();
    Cone c{LocalForm(th), LocalForm(th)};
    RandomSpec s = spec;
    s.vfd = 0;
    for (int j = 0; j <= n; ++j) {
        s.hfd = n - j;
        s.ghd = ped + j;
        c.body += randomForm(th, rng, s);
    }
    const int deg = ped + n + 1;
    if (deg >= 0 && deg <= n) {
        RandomSpec b = spec;
        b.vfd = 0;
        b.hfd = deg;
        b.ghd = 0;
        b.maxJetFactors = 0;
        b.baseCoordinates = true;
        c.base = randomForm(th, rng, b);
    }
    return c;
}

LocalForm randomFunctional(const TheoryPtr& th, std::mt19937_64& rng, int g, const RandomSpec& spec) {
    RandomSpec s = spec;
    s.vfd = 0;
    s.hfd = th->dim();
    s.ghd = g;
    return functionalProjector(include(randomForm(th, rng, s)));
}

TheoryPtr mixedTheory(int n, int jetCap) {
    return makeTheory(n, {{"u", 0}, {"c", 1}, {"b", -1}, {"e", 2}, {"f", -2}}, {}, jetCap);
}

} // namespace vbc
