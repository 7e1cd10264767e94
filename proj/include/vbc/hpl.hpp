#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vbc/theory.hpp"

namespace vbc {

// Homotopy equivalence f: A -> B, g: B -> A with
//   id_A - g f = [dA, hA],   id_B - f g = [dB, hB].
// A deformation retract has hA empty (so g f = id_A). Empty closures act as zero.
template <class A, class B>
struct RetractDatum {
    std::function<A(const A&)> dA;
    std::function<B(const B&)> dB;
    std::function<B(const A&)> f;
    std::function<A(const B&)> g;
    std::function<B(const B&)> hB;
    std::function<A(const A&)> hA;
    bool special = false; // hB^2 = hB f = g hB = 0
};

template <class B>
struct Perturbation {
    std::function<B(const B&)> k;
    int nilpotencyBound = 8;
};

namespace detail {

template <class T, class F>
T applyOr(const F& op, const T& x) {
    return op ? op(x) : T();
}

// sum_i (-k h)^i applied to x
template <class B>
B geometric(const std::function<B(const B&)>& first, const std::function<B(const B&)>& second, const B& x, int bound) {
    B out = x;
    B cur = x;
    for (int i = 1;; ++i) {
        cur = -first(second(cur));
        if (cur.isZero()) break;
        if (i > bound) throw NilpotencyExceeded("perturbation series did not terminate within its bound");
        out += cur;
    }
    return out;
}

} // namespace detail

template <class A, class B>
RetractDatum<A, B> perturb(const RetractDatum<A, B>& r, const Perturbation<B>& p) {
    RetractDatum<A, B> out;
    auto h = r.hB;
    auto k = p.k;
    int bound = p.nilpotencyBound;
    std::function<B(const B&)> H = [h](const B& b) { return detail::applyOr(h, b); };
    // sum (-k h)^i
    auto kh = [k, H, bound](const B& b) { return detail::geometric<B>(k, H, b, bound); };
    out.dA = [r, kh, k](const A& a) { return detail::applyOr(r.dA, a) + r.g(kh(k(r.f(a)))); };
    out.dB = [r, k](const B& b) { return detail::applyOr(r.dB, b) + k(b); };
    out.f = [r, k, H, bound](const A& a) { return detail::geometric<B>(H, k, r.f(a), bound); };
    out.g = [r, kh](const B& b) { return r.g(kh(b)); };
    out.hB = [H, kh](const B& b) { return H(kh(b)); };
    out.hA = r.hA;
    out.special = r.special;
    return out;
}

// r1: A <-> B, r2: B <-> C. Homotopies H_A = hA1 + g1 hB2 f1, H_C = hC2 + f2 hB1 g2.
template <class A, class B, class C>
RetractDatum<A, C> composeRetracts(const RetractDatum<A, B>& r1, const RetractDatum<B, C>& r2) {
    RetractDatum<A, C> out;
    out.dA = r1.dA;
    out.dB = r2.dB;
    out.f = [r1, r2](const A& a) { return r2.f(r1.f(a)); };
    out.g = [r1, r2](const C& c) { return r1.g(r2.g(c)); };
    out.hA = [r1, r2](const A& a) { return detail::applyOr(r1.hA, a) + r1.g(detail::applyOr(r2.hA, r1.f(a))); };
    out.hB = [r1, r2](const C& c) { return detail::applyOr(r2.hB, c) + r2.f(detail::applyOr(r1.hB, r2.g(c))); };
    return out;
}

// the same equivalence read in the opposite direction
template <class A, class B>
RetractDatum<B, A> reverse(const RetractDatum<A, B>& r) {
    RetractDatum<B, A> out;
    out.dA = r.dB;
    out.dB = r.dA;
    out.f = r.g;
    out.g = r.f;
    out.hA = r.hB;
    out.hB = r.hA;
    return out;
}

template <class A>
RetractDatum<A, A> identityRetract(std::function<A(const A&)> d) {
    RetractDatum<A, A> r;
    r.dA = d;
    r.dB = d;
    r.f = [](const A& a) { return a; };
    r.g = [](const A& a) { return a; };
    r.special = true;
    return r;
}

struct ProbeReport {
    std::string name;
    int probes = 0;
    int failures = 0;
    std::string firstResidual;
    bool ok() const { return failures == 0; }
};

namespace detail {

template <class T>
void record(ProbeReport& rep, const T& residual) {
    ++rep.probes;
    if (!residual.isZero()) {
        if (rep.failures == 0) rep.firstResidual = residual.str();
        ++rep.failures;
    }
}

} // namespace detail

// Re-verifies the chain-map and homotopy identities on probe elements.
template <class A, class B>
std::vector<ProbeReport> verifyRetract(const RetractDatum<A, B>& r, const std::vector<A>& probesA,
                                       const std::vector<B>& probesB) {
    using detail::applyOr;
    ProbeReport fChain{"f chain map"}, gChain{"g chain map"}, homB{"homotopy on B"}, homA{"homotopy on A"};
    ProbeReport spec{"special conditions"};
    for (const A& a : probesA) {
        detail::record(fChain, r.f(applyOr(r.dA, a)) - applyOr(r.dB, r.f(a)));
        A ha = applyOr(r.hA, a);
        detail::record(homA, a - r.g(r.f(a)) - applyOr(r.dA, ha) - applyOr(r.hA, applyOr(r.dA, a)));
        if (r.special) detail::record(spec, applyOr(r.hB, r.f(a)));
    }
    for (const B& b : probesB) {
        detail::record(gChain, r.g(applyOr(r.dB, b)) - applyOr(r.dA, r.g(b)));
        B hb = applyOr(r.hB, b);
        detail::record(homB, b - r.f(r.g(b)) - applyOr(r.dB, hb) - applyOr(r.hB, applyOr(r.dB, b)));
        if (r.special) {
            detail::record(spec, applyOr(r.hB, hb));
            detail::record(spec, r.g(hb));
        }
    }
    std::vector<ProbeReport> out{fChain, gChain, homB, homA};
    if (r.special) out.push_back(spec);
    return out;
}

} // namespace vbc
