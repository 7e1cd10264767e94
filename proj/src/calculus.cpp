#include "vbc/calculus.hpp"

#include <map>
#include <set>
#include <sstream>

namespace vbc {

Field::Field(TheoryPtr th, int ghost) : th_(std::move(th)), ghost_(ghost) {
    for (int a = 0; a < th_->fieldCount(); ++a) comp_.emplace_back(th_);
}

const LocalForm& Field::component(const std::string& name) const {
    int a = th_->fieldIndex(name);
    if (a < 0) throw std::invalid_argument("unknown field '" + name + "'");
    return comp_[a];
}

Field& Field::set(int a, LocalForm xa) {
    xa.setTheory(th_);
    comp_.at(a) = std::move(xa);
    return *this;
}

Field& Field::set(const std::string& name, LocalForm xa) {
    int a = th_->fieldIndex(name);
    if (a < 0) throw std::invalid_argument("unknown field '" + name + "'");
    return set(a, std::move(xa));
}

bool Field::isZero() const {
    for (const auto& c : comp_)
        if (!c.isZero()) return false;
    return true;
}

Field& Field::operator+=(const Field& o) {
    for (std::size_t a = 0; a < comp_.size(); ++a) comp_[a] += o.comp_.at(a);
    return *this;
}

Field& Field::operator-=(const Field& o) {
    for (std::size_t a = 0; a < comp_.size(); ++a) comp_[a] -= o.comp_.at(a);
    return *this;
}

Field& Field::operator*=(const Rational& c) {
    for (auto& x : comp_) x *= c;
    return *this;
}

std::string Field::str() const {
    std::ostringstream os;
    for (int a = 0; a < th_->fieldCount(); ++a) {
        if (a) os << "; ";
        os << th_->field(a).name << " -> " << comp_[a].str();
    }
    return os.str();
}

LocalForm derivation(const LocalForm& x, int parity, const GeneratorImage& image) {
    LocalForm out(x.theory());
    if (x.isZero()) return out;
    const Theory& th = *x.theory();
    std::map<Gen::Raw, LocalForm> cache;
    auto img = [&](Gen::Raw g) -> const LocalForm& {
        auto it = cache.find(g);
        if (it == cache.end()) it = cache.emplace(g, image(g)).first;
        return it->second;
    };
    const bool oddOp = (parity % 2 + 2) % 2 == 1;
    Word left, right, mid, full;
    for (const auto& [w, c] : x.terms()) {
        int prefix = 0;
        for (std::size_t j = 0; j < w.size(); ++j) {
            const LocalForm& im = img(w[j]);
            if (!im.isZero()) {
                left.assign(w.begin(), w.begin() + j);
                right.assign(w.begin() + j + 1, w.end());
                Rational base = (oddOp && (prefix & 1)) ? Rational(-c) : c;
                for (const auto& [wi, ci] : im.terms()) {
                    int s1 = mergeWords(th, left, wi, mid);
                    if (s1 == 0) continue;
                    int s2 = mergeWords(th, mid, right, full);
                    if (s2 == 0) continue;
                    Rational v = base * ci;
                    if (s1 * s2 < 0) v = -v;
                    out.addTerm(full, v);
                }
            }
            prefix += Gen::odd(w[j]);
        }
    }
    return out;
}

LocalForm totalDerivative(int i, const LocalForm& x) {
    if (x.isZero()) return x;
    const Theory& th = *x.theory();
    if (i < 0 || i >= th.dim()) throw std::invalid_argument("total derivative index out of range");
    TheoryPtr tp = x.theory();
    return derivation(x, 0, [&](Gen::Raw g) {
        switch (Gen::kind(g)) {
        case GenKind::Jet:
        case GenKind::Vertical: return LocalForm::generator(tp, Gen::raise(th, g, i));
        case GenKind::Base: return Gen::coord(g) == i ? LocalForm::constant(tp, 1) : LocalForm(tp);
        case GenKind::Horizontal: break;
        }
        return LocalForm(tp);
    });
}

LocalForm totalDerivative(const MultiIndex& I, const LocalForm& x) {
    LocalForm y = x;
    for (int i = 0; i < Theory::kMaxDim; ++i)
        for (int k = 0; k < I[i]; ++k) y = totalDerivative(i, y);
    return y;
}

LocalForm dH(const LocalForm& x) {
    LocalForm out(x.theory());
    if (x.isZero()) return out;
    for (int i = 0; i < x.theory()->dim(); ++i) out += LocalForm::dx(x.theory(), i) * totalDerivative(i, x);
    return out;
}

LocalForm dV(const LocalForm& x) {
    if (x.isZero()) return x;
    TheoryPtr tp = x.theory();
    return derivation(x, 1, [&](Gen::Raw g) {
        if (Gen::kind(g) == GenKind::Jet) return LocalForm::generator(tp, Gen::toVertical(*tp, g));
        return LocalForm(tp);
    });
}

LocalForm dTot(const LocalForm& x) { return dV(x) + dH(x); }

LocalForm contract(const Field& X, const LocalForm& x) {
    if (x.isZero()) return LocalForm(commonTheory(x.theory(), X.theory()));
    TheoryPtr tp = commonTheory(x.theory(), X.theory());
    return derivation(x, X.ghost() - 1, [&](Gen::Raw g) {
        if (Gen::kind(g) != GenKind::Vertical) return LocalForm(tp);
        return totalDerivative(Gen::index(g), X[Gen::field(g)]);
    });
}

LocalForm lie(const Field& X, const LocalForm& x) {
    if (x.isZero()) return LocalForm(commonTheory(x.theory(), X.theory()));
    TheoryPtr tp = commonTheory(x.theory(), X.theory());
    const bool oddX = (X.ghost() % 2 + 2) % 2 == 1;
    return derivation(x, X.ghost(), [&](Gen::Raw g) {
        switch (Gen::kind(g)) {
        case GenKind::Jet: return totalDerivative(Gen::index(g), X[Gen::field(g)]);
        case GenKind::Vertical: {
            LocalForm v = dV(totalDerivative(Gen::index(g), X[Gen::field(g)]));
            return oddX ? -v : v;
        }
        default: break;
        }
        return LocalForm(tp);
    });
}

Field bracket(const Field& X, const Field& Y) {
    TheoryPtr tp = commonTheory(X.theory(), Y.theory());
    Field out(tp, X.ghost() + Y.ghost());
    const bool minus = ((X.ghost() * Y.ghost()) % 2 + 2) % 2 == 0;
    for (int a = 0; a < tp->fieldCount(); ++a) {
        LocalForm c = lie(X, Y[a]);
        LocalForm d = lie(Y, X[a]);
        out.set(a, minus ? c - d : c + d);
    }
    return out;
}

LocalForm leftPartial(Gen::Raw g, const LocalForm& x) {
    if (x.isZero()) return x;
    TheoryPtr tp = x.theory();
    return derivation(x, Gen::odd(g) ? 1 : 0, [&](Gen::Raw h) {
        return h == g ? LocalForm::constant(tp, 1) : LocalForm(tp);
    });
}

LocalForm horizontalContract(int i, const LocalForm& x) { return leftPartial(Gen::horizontal(i), x); }

LocalForm interiorEuler(const LocalForm& x) {
    LocalForm out(x.theory());
    if (x.isZero()) return out;
    const Theory& th = *x.theory();
    TheoryPtr tp = x.theory();
    std::map<int, LocalForm> byVfd;
    for (const auto& [w, c] : x.terms()) {
        auto d = wordDegrees(th, w);
        if (d.hfd < th.dim()) continue;
        if (d.vfd == 0) throw std::domain_error("interior Euler operator is undefined on vertical degree 0");
        byVfd.try_emplace(d.vfd, tp).first->second.addTerm(w, c);
    }
    for (const auto& [p, xp] : byVfd) {
        std::set<Gen::Raw> verts;
        for (const auto& [w, c] : xp.terms())
            for (Gen::Raw g : w)
                if (Gen::kind(g) == GenKind::Vertical) verts.insert(g);
        std::map<int, LocalForm> perField;
        for (Gen::Raw g : verts) {
            LocalForm t = totalDerivative(Gen::index(g), leftPartial(g, xp));
            if (Gen::indexOrder(g) % 2) t = -t;
            perField.try_emplace(Gen::field(g), tp).first->second += t;
        }
        LocalForm sum(tp);
        for (const auto& [a, s] : perField) sum += LocalForm::generator(tp, Gen::vertical(th, a, {})) * s;
        out += sum * Rational(1, p);
    }
    return out;
}

LocalForm eulerLagrange(const LocalForm& L) {
    if (L.isZero()) return L;
    auto v = L.vfd();
    auto h = L.hfd();
    if (!v || *v != 0 || !h || *h != L.theory()->dim())
        throw std::domain_error("Euler-Lagrange operator needs a top horizontal form of vertical degree 0");
    return interiorEuler(dV(L));
}

LocalForm eulerGrading(const LocalForm& x) {
    LocalForm out(x.theory());
    for (const auto& [w, c] : x.terms()) {
        int g = wordDegrees(*x.theory(), w).ghd;
        if (g != 0) out.addTerm(w, c * g);
    }
    return out;
}

Field eulerField(const TheoryPtr& th) {
    Field E(th, 0);
    for (int a = 0; a < th->fieldCount(); ++a)
        E.set(a, LocalForm::generator(th, Gen::jet(*th, a, {})) * Rational(th->field(a).ghost));
    return E;
}

Field radialField(const TheoryPtr& th) {
    Field R(th, 0);
    for (int a = 0; a < th->fieldCount(); ++a) R.set(a, LocalForm::generator(th, Gen::jet(*th, a, {})));
    return R;
}

} // namespace vbc
