#include "vbc/form.hpp"

#include <sstream>
#include <stdexcept>

namespace vbc {

TheoryPtr commonTheory(const TheoryPtr& a, const TheoryPtr& b) {
    if (!a) return b;
    if (!b) return a;
    if (a != b) throw TheoryMismatch("local forms from different theories were combined");
    return a;
}

WordDegrees wordDegrees(const Theory& th, const Word& w) {
    WordDegrees d;
    for (Gen::Raw g : w) {
        switch (Gen::kind(g)) {
        case GenKind::Jet:
            d.ghd += th.field(Gen::field(g)).ghost;
            ++d.jetDegree;
            break;
        case GenKind::Vertical:
            d.ghd += th.field(Gen::field(g)).ghost;
            ++d.vfd;
            break;
        case GenKind::Horizontal: ++d.hfd; break;
        case GenKind::Base: break;
        }
    }
    d.total = d.ghd + d.vfd + d.hfd;
    return d;
}

int mergeWords(const Theory&, const Word& a, const Word& b, Word& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    int oddLeft = 0;
    for (Gen::Raw g : a) oddLeft += Gen::odd(g);
    int parity = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] < b[j])) {
            oddLeft -= Gen::odd(a[i]);
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j] < a[i]) {
            if (Gen::odd(b[j])) parity ^= (oddLeft & 1);
            out.push_back(b[j++]);
        } else {
            if (Gen::odd(a[i])) {
                out.clear();
                return 0;
            }
            out.push_back(a[i++]);
        }
    }
    return parity ? -1 : 1;
}

int sortWord(const Theory&, Word& w) {
    int sign = 1;
    for (std::size_t i = 1; i < w.size(); ++i) {
        Gen::Raw g = w[i];
        std::size_t j = i;
        while (j > 0 && w[j - 1] > g) {
            if (Gen::odd(g) && Gen::odd(w[j - 1])) sign = -sign;
            w[j] = w[j - 1];
            --j;
        }
        w[j] = g;
    }
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] == w[i - 1] && Gen::odd(w[i])) return 0;
    return sign;
}

LocalForm LocalForm::constant(TheoryPtr th, const Rational& c) {
    LocalForm f(std::move(th));
    f.addTerm(Word{}, c);
    return f;
}

LocalForm LocalForm::normalize(TheoryPtr th, Word raw, const Rational& c) {
    if (!th) throw std::invalid_argument("normalize needs a theory");
    for (Gen::Raw g : raw) {
        GenKind k = Gen::kind(g);
        if ((k == GenKind::Jet || k == GenKind::Vertical) && Gen::field(g) >= th->fieldCount())
            throw std::invalid_argument("unknown field index");
        if ((k == GenKind::Base || k == GenKind::Horizontal) && Gen::coord(g) >= th->dim())
            throw std::invalid_argument("coordinate index out of range");
    }
    LocalForm f(th);
    int s = sortWord(*th, raw);
    if (s != 0) f.addTerm(std::move(raw), s > 0 ? c : Rational(-c));
    return f;
}

LocalForm LocalForm::generator(TheoryPtr th, Gen::Raw g) {
    LocalForm f(std::move(th));
    f.addTerm(Word{g}, 1);
    return f;
}

LocalForm LocalForm::jet(TheoryPtr th, const std::string& field, const MultiIndex& I) {
    int a = th->fieldIndex(field);
    if (a < 0) throw std::invalid_argument("unknown field '" + field + "'");
    return generator(th, Gen::jet(*th, a, I));
}

LocalForm LocalForm::vertical(TheoryPtr th, const std::string& field, const MultiIndex& I) {
    int a = th->fieldIndex(field);
    if (a < 0) throw std::invalid_argument("unknown field '" + field + "'");
    return generator(th, Gen::vertical(*th, a, I));
}

LocalForm LocalForm::dx(TheoryPtr th, int coord) {
    if (coord < 0 || coord >= th->dim()) throw std::invalid_argument("coordinate index out of range");
    return generator(th, Gen::horizontal(coord));
}

LocalForm LocalForm::x(TheoryPtr th, int coord) {
    if (coord < 0 || coord >= th->dim()) throw std::invalid_argument("coordinate index out of range");
    return generator(th, Gen::base(coord));
}

LocalForm LocalForm::volume(TheoryPtr th) {
    Word w;
    for (int i = 0; i < th->dim(); ++i) w.push_back(Gen::horizontal(i));
    LocalForm f(std::move(th));
    f.addTerm(std::move(w), 1);
    return f;
}

void LocalForm::addTerm(const Word& w, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (inserted) {
        it->second.canonicalize();
    } else {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

void LocalForm::addTerm(Word&& w, const Rational& c) {
    if (sgn(c) == 0) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(std::move(w), c).first->second.canonicalize();
    } else {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

void LocalForm::setTheory(TheoryPtr th) { th_ = commonTheory(th_, th); }

LocalForm& LocalForm::operator+=(const LocalForm& o) {
    th_ = commonTheory(th_, o.th_);
    for (const auto& [w, c] : o.terms_) addTerm(w, c);
    return *this;
}

LocalForm& LocalForm::operator-=(const LocalForm& o) {
    th_ = commonTheory(th_, o.th_);
    for (const auto& [w, c] : o.terms_) addTerm(w, -c);
    return *this;
}

LocalForm& LocalForm::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, v] : terms_) v *= c;
    return *this;
}

LocalForm LocalForm::operator-() const {
    LocalForm r = *this;
    for (auto& [w, v] : r.terms_) v = -v;
    return r;
}

LocalForm operator*(const LocalForm& a, const LocalForm& b) {
    LocalForm r(commonTheory(a.th_, b.th_));
    if (a.isZero() || b.isZero()) return r;
    const Theory& th = *r.th_;
    Word w;
    for (const auto& [wa, ca] : a.terms_) {
        for (const auto& [wb, cb] : b.terms_) {
            int s = mergeWords(th, wa, wb, w);
            if (s == 0) continue;
            Rational c = ca * cb;
            if (s < 0) c = -c;
            r.addTerm(w, c);
        }
    }
    return r;
}

LocalForm wedge(const LocalForm& a, const LocalForm& b) { return a * b; }

LocalForm LocalForm::filter(const std::function<bool(const Word&)>& keep) const {
    LocalForm r(th_);
    for (const auto& [w, c] : terms_)
        if (keep(w)) r.terms_.emplace_hint(r.terms_.end(), w, c);
    return r;
}

std::optional<int> LocalForm::uniform(const std::function<int(const WordDegrees&)>& deg) const {
    std::optional<int> v;
    for (const auto& [w, c] : terms_) {
        int d = deg(wordDegrees(*th_, w));
        if (v && *v != d) return std::nullopt;
        v = d;
    }
    return v;
}

std::optional<int> LocalForm::vfd() const { return uniform([](const WordDegrees& d) { return d.vfd; }); }
std::optional<int> LocalForm::hfd() const { return uniform([](const WordDegrees& d) { return d.hfd; }); }
std::optional<int> LocalForm::ghd() const { return uniform([](const WordDegrees& d) { return d.ghd; }); }

Degrees LocalForm::degrees() const {
    Degrees out;
    if (isZero()) {
        out.zero = true;
        return out;
    }
    auto v = vfd(), h = hfd(), g = ghd();
    if (!v) throw std::domain_error("form is not homogeneous in vertical degree");
    if (!h) throw std::domain_error("form is not homogeneous in horizontal degree");
    if (!g) throw std::domain_error("form is not homogeneous in ghost degree");
    int n = th_->dim();
    out.vfd = *v;
    out.hfd = *h;
    out.hcd = n - *h;
    out.ghd = *g;
    out.tfd = out.vfd + out.hfd;
    out.efd = out.vfd - out.hcd;
    out.ped = out.ghd - out.hcd;
    out.ted = out.ped + out.vfd;
    return out;
}

int LocalForm::maxJetOrder() const {
    int m = 0;
    for (const auto& [w, c] : terms_)
        for (Gen::Raw g : w)
            if (Gen::kind(g) == GenKind::Jet || Gen::kind(g) == GenKind::Vertical) m = std::max(m, Gen::indexOrder(g));
    return m;
}

std::string LocalForm::str() const {
    if (isZero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        Rational a = abs(c);
        if (first) {
            if (sgn(c) < 0) os << "-";
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        if (w.empty()) {
            os << a.get_str();
            continue;
        }
        if (a != 1) os << a.get_str() << "*";
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) os << "^";
            os << Gen::name(*th_, w[i]);
        }
    }
    return os.str();
}

LocalForm projectBidegree(const LocalForm& x, int p, int q) {
    const Theory* th = x.theory().get();
    return x.filter([&](const Word& w) {
        auto d = wordDegrees(*th, w);
        return d.vfd == p && d.hfd == q;
    });
}

LocalForm projectVfd(const LocalForm& x, int p) {
    const Theory* th = x.theory().get();
    return x.filter([&](const Word& w) { return wordDegrees(*th, w).vfd == p; });
}

LocalForm projectHfd(const LocalForm& x, int q) {
    const Theory* th = x.theory().get();
    return x.filter([&](const Word& w) { return wordDegrees(*th, w).hfd == q; });
}

LocalForm projectGhd(const LocalForm& x, int g) {
    const Theory* th = x.theory().get();
    return x.filter([&](const Word& w) { return wordDegrees(*th, w).ghd == g; });
}

std::vector<std::pair<int, int>> bidegrees(const LocalForm& x) {
    std::vector<std::pair<int, int>> out;
    for (const auto& [w, c] : x.terms()) {
        auto d = wordDegrees(*x.theory(), w);
        std::pair<int, int> pq{d.vfd, d.hfd};
        bool seen = false;
        for (auto& e : out) seen = seen || e == pq;
        if (!seen) out.push_back(pq);
    }
    return out;
}

LocalForm zeroSectionPullback(const LocalForm& x) {
    return x.filter([](const Word& w) {
        for (Gen::Raw g : w)
            if (Gen::kind(g) == GenKind::Jet || Gen::kind(g) == GenKind::Vertical) return false;
        return true;
    });
}

bool isBaseForm(const LocalForm& x) { return zeroSectionPullback(x) == x; }

std::ostream& operator<<(std::ostream& os, const LocalForm& x) { return os << x.str(); }

} // namespace vbc
