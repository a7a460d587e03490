#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fdb/scalar.hpp"

namespace fdb {

// A formal product of generators from the alphabet {vbar, v_1, ..., v_n}
// (vbar at index 0), stored as a multiplicity vector. Addition of points is
// multiplicity addition — the monoid the level-1 algebra is built on.
struct FreePoint {
    std::vector<std::int32_t> mult;

    int alphabet() const { return static_cast<int>(mult.size()); }
    FreePoint plus(const FreePoint& o) const;
    auto operator<=>(const FreePoint&) const = default;
};

// Integer combination of points: an element of the group algebra over the
// free commutative monoid, with E x . E y = E(x+y) and unit E 0. The map
// keeps keys sorted and zero-free, so equal sums are structurally equal.
class Level1Sum {
public:
    explicit Level1Sum(int alphabet) : alphabet_(alphabet) {}

    static Level1Sum unit(int alphabet);                  // E 0
    static Level1Sum basis(const FreePoint& p);           // E p

    int alphabet() const { return alphabet_; }
    const std::map<FreePoint, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const FreePoint& p, const Int& c);

    bool operator==(const Level1Sum& o) const {
        return alphabet_ == o.alphabet_ && terms_ == o.terms_;
    }

    // canonical total order, usable as a map key one level up
    bool less_than(const Level1Sum& o) const;

    std::string to_string() const;  // canonical serialization

private:
    int alphabet_;
    std::map<FreePoint, Int> terms_;
};

Level1Sum l1_add(const Level1Sum& a, const Level1Sum& b);
Level1Sum l1_neg(const Level1Sum& a);
Level1Sum l1_mul(const Level1Sum& a, const Level1Sum& b);  // convolution

struct Level1Less {
    bool operator()(const Level1Sum& a, const Level1Sum& b) const {
        return a.less_than(b);
    }
};

// Same construction one level up: integer combinations of E[p] for
// canonical level-1 sums p, with E[p] . E[q] = E[p+q] and unit E[0].
// The E[.] promotion of a Level1Sum to a basis element is the explicit
// `basis` constructor — never implicit.
class Level2Sum {
public:
    explicit Level2Sum(int alphabet) : alphabet_(alphabet) {}

    static Level2Sum unit(int alphabet);                  // E[zero level-1 sum]
    static Level2Sum basis(const Level1Sum& p);           // E[p]

    int alphabet() const { return alphabet_; }
    const std::map<Level1Sum, Int, Level1Less>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Level1Sum& p, const Int& c);

    bool operator==(const Level2Sum& o) const;

    std::string to_string() const;

private:
    int alphabet_;
    std::map<Level1Sum, Int, Level1Less> terms_;
};

Level2Sum l2_add(const Level2Sum& a, const Level2Sum& b);
Level2Sum l2_neg(const Level2Sum& a);
Level2Sum l2_mul(const Level2Sum& a, const Level2Sum& b);

// Both sides of the vanishing-differences identity over {vbar, v_1..v_n}:
// the alternating sum over subsets on the left, the sum over covers of the
// ground set on the right. Supported for 0 <= n <= 4.
Level2Sum lemma2_lhs(int n);
Level2Sum lemma2_rhs(int n);
bool lemma2_verify(int n);

}  // namespace fdb
