#include "vbc/models.hpp"

namespace vbc {

namespace {

MultiIndex unit(int i, int k = 1) {
    MultiIndex I{};
    I[i] = k;
    return I;
}

} // namespace

Model particle(int jetCap) {
    auto th = makeTheory(1, {{"x", 0}, {"x+", -1}}, {"t"}, jetCap);
    Model m{"particle", th, LocalForm::vertical(th, "x+") * LocalForm::vertical(th, "x") * LocalForm::volume(th),
            Field(th, 1)};
    m.Q.set("x+", LocalForm::jet(th, "x", unit(0, 2)));
    return m;
}

Model freeScalar2(int jetCap) {
    auto th = makeTheory(2, {{"phi", 0}, {"phi+", -1}}, {"x", "y"}, jetCap);
    Model m{"scalar2", th,
            LocalForm::vertical(th, "phi+") * LocalForm::vertical(th, "phi") * LocalForm::volume(th), Field(th, 1)};
    m.Q.set("phi+", LocalForm::jet(th, "phi", unit(0, 2)) + LocalForm::jet(th, "phi", unit(1, 2)));
    return m;
}

Model chernSimons3(int jetCap) {
    auto th = makeTheory(3,
                         {{"A1", 0}, {"A2", 0}, {"A3", 0}, {"c", 1}, {"A1+", -1}, {"A2+", -1}, {"A3+", -1}, {"c+", -2}},
                         {"x", "y", "z"}, jetCap);
    const std::string A[3] = {"A1", "A2", "A3"};
    const std::string Ap[3] = {"A1+", "A2+", "A3+"};
    const LocalForm vol = LocalForm::volume(th);
    Model m{"chern-simons3", th, LocalForm(th), Field(th, 1)};
    LocalForm divAp(th);
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        m.Q.set(A[i], LocalForm::jet(th, "c", unit(i)));
        m.Q.set(Ap[i], LocalForm::jet(th, A[k], unit(j)) - LocalForm::jet(th, A[j], unit(k)));
        divAp += LocalForm::jet(th, Ap[i], unit(i));
        m.omega += LocalForm::vertical(th, Ap[i]) * LocalForm::vertical(th, A[i]) * vol;
    }
    m.Q.set("c+", divAp);
    m.omega += LocalForm::vertical(th, "c+") * LocalForm::vertical(th, "c") * vol;
    return m;
}

Model nonVariationalParticle(int jetCap) {
    Model m = particle(jetCap);
    m.name = "nonvariational-particle";
    m.Q.set("x+", LocalForm::jet(m.theory, "x", unit(0)));
    return m;
}

Model nonClosedParticle(int jetCap) {
    Model m = particle(jetCap);
    m.name = "nonclosed-particle";
    m.omega = LocalForm::jet(m.theory, "x", unit(0)) * m.omega;
    return m;
}

std::vector<Model> builtinModels() { return {particle(), freeScalar2(), chernSimons3()}; }

std::vector<Model> brokenModels() { return {nonVariationalParticle(), nonClosedParticle()}; }

} // namespace vbc
