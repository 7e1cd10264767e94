#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "vbc/generator.hpp"
#include "vbc/theory.hpp"

namespace vbc {

using Word = std::vector<Gen::Raw>;
using Rational = mpq_class;

struct WordDegrees {
    int vfd = 0;
    int hfd = 0;
    int ghd = 0;
    int total = 0;
    int jetDegree = 0; // polynomial degree in jet variables
};

WordDegrees wordDegrees(const Theory& th, const Word& w);

struct Degrees {
    int vfd = 0, hfd = 0, hcd = 0, ghd = 0, tfd = 0, efd = 0, ped = 0, ted = 0;
    bool zero = false; // the zero form is homogeneous in every degree
};

// Product of two sorted words; returns 0 (with empty word) when an odd
// generator repeats, otherwise +1 or -1 from the Koszul rule.
int mergeWords(const Theory& th, const Word& a, const Word& b, Word& out);

// Sort an arbitrary product of generators into canonical order.
int sortWord(const Theory& th, Word& w);

class LocalForm {
public:
    using TermMap = std::map<Word, Rational>;

    LocalForm() = default;
    explicit LocalForm(TheoryPtr th) : th_(std::move(th)) {}

    static LocalForm constant(TheoryPtr th, const Rational& c);
    static LocalForm normalize(TheoryPtr th, Word raw, const Rational& c = 1);
    static LocalForm generator(TheoryPtr th, Gen::Raw g);
    static LocalForm jet(TheoryPtr th, const std::string& field, const MultiIndex& I = {});
    static LocalForm vertical(TheoryPtr th, const std::string& field, const MultiIndex& I = {});
    static LocalForm dx(TheoryPtr th, int coord);
    static LocalForm x(TheoryPtr th, int coord);
    static LocalForm volume(TheoryPtr th);

    const TheoryPtr& theory() const { return th_; }
    const TermMap& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    // adds c * w, with w already sorted and free of repeated odd generators
    void addTerm(const Word& w, const Rational& c);
    void addTerm(Word&& w, const Rational& c);
    void setTheory(TheoryPtr th);

    LocalForm& operator+=(const LocalForm& o);
    LocalForm& operator-=(const LocalForm& o);
    LocalForm& operator*=(const Rational& c);
    LocalForm operator-() const;

    friend LocalForm operator+(LocalForm a, const LocalForm& b) { return a += b; }
    friend LocalForm operator-(LocalForm a, const LocalForm& b) { return a -= b; }
    friend LocalForm operator*(LocalForm a, const Rational& c) { return a *= c; }
    friend LocalForm operator*(const Rational& c, LocalForm a) { return a *= c; }
    friend LocalForm operator*(const LocalForm& a, const LocalForm& b);
    bool operator==(const LocalForm& o) const { return terms_ == o.terms_; }
    bool operator!=(const LocalForm& o) const { return !(*this == o); }

    LocalForm filter(const std::function<bool(const Word&)>& keep) const;

    // all degree functions; throws std::domain_error when inhomogeneous
    Degrees degrees() const;
    // the single value of the given per-word degree, or nullopt if mixed or zero
    std::optional<int> uniform(const std::function<int(const WordDegrees&)>& deg) const;
    std::optional<int> vfd() const;
    std::optional<int> hfd() const;
    std::optional<int> ghd() const;

    int maxJetOrder() const;
    std::string str() const;

private:
    TheoryPtr th_;
    TermMap terms_;
};

LocalForm wedge(const LocalForm& a, const LocalForm& b);

// the (vfd = p, hfd = q) component
LocalForm projectBidegree(const LocalForm& x, int p, int q);
LocalForm projectVfd(const LocalForm& x, int p);
LocalForm projectHfd(const LocalForm& x, int q);
LocalForm projectGhd(const LocalForm& x, int g);
std::vector<std::pair<int, int>> bidegrees(const LocalForm& x);

// 0*: sets jet variables and vertical generators to zero
LocalForm zeroSectionPullback(const LocalForm& x);
bool isBaseForm(const LocalForm& x);

TheoryPtr commonTheory(const TheoryPtr& a, const TheoryPtr& b);

std::ostream& operator<<(std::ostream& os, const LocalForm& x);

} // namespace vbc
