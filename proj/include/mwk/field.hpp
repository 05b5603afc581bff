#pragma once

#include "mwk/rational.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace mwk {

enum class FieldKind { FiniteField, Rationals, RealQuadratic, RealClosed, AlgebraicallyClosed };

// Discrete-log tables for F_q, q = p^m odd. Element codes pack polynomial
// coefficients base p (residues for m = 1); code 0 is the zero element.
struct FqTables {
    std::int64_t q = 0, p = 0;
    int m = 1;
    std::uint32_t generator = 0;
    std::vector<std::uint32_t> exp; // exp[i] = code of g^i, i in [0, q-1)
    std::vector<std::int32_t> log;  // log[code] = i, log[0] = -1
};

struct FieldDescriptor {
    FieldKind kind = FieldKind::Rationals;
    std::int64_t q = 0;           // FiniteField
    std::int64_t d = 0;           // RealQuadratic
    std::int64_t factor_bound = 1000000;
    std::shared_ptr<const FqTables> tables; // FiniteField only

    static FieldDescriptor rationals(std::int64_t bound = 1000000);
    static FieldDescriptor finite(std::int64_t q, std::int64_t bound = 1000000);
    static FieldDescriptor real_quadratic(std::int64_t d, std::int64_t bound = 1000000);
    static FieldDescriptor real_closed(std::int64_t bound = 1000000);
    static FieldDescriptor algebraically_closed(std::int64_t bound = 1000000);

    // `Q`, `F(q)`, `Q(sqrt(d))`, `Rclosed`, `Cclosed`
    static FieldDescriptor parse(const std::string& text, std::int64_t bound = 1000000);

    bool same(const FieldDescriptor& o) const {
        return kind == o.kind && q == o.q && d == o.d;
    }
    std::string str() const;
};

struct FieldElement {
    FieldDescriptor field;
    // FiniteField: code; others unused
    std::uint32_t code = 0;
    // Rationals / RealClosed / AlgebraicallyClosed: value = a; RealQuadratic: a + b*sqrt(d)
    Rat a, b;

    bool is_zero() const;
    bool is_one() const;
    bool is_minus_one() const;
    std::string str() const;

    friend bool operator==(const FieldElement& x, const FieldElement& y);
    friend bool operator!=(const FieldElement& x, const FieldElement& y) { return !(x == y); }
};

struct Ordering {
    FieldDescriptor field;
    int id = 0;
    friend bool operator==(const Ordering& x, const Ordering& y) {
        return x.field.same(y.field) && x.id == y.id;
    }
};

FieldElement make_element(const FieldDescriptor& F, const Rat& a, const Rat& b = Rat(0));
FieldElement make_fq_element(const FieldDescriptor& F, std::int64_t residue_or_code);
FieldElement fq_generator_power(const FieldDescriptor& F, std::int64_t k);
FieldElement element_from_int(const FieldDescriptor& F, std::int64_t n);

// `a/b`, `a/b+c/e*sqrt(d)`, `g^k`, decimal integers
FieldElement parse_element(const FieldDescriptor& F, const std::string& text);

FieldElement neg(const FieldElement& x);
FieldElement add(const FieldElement& x, const FieldElement& y);
FieldElement mul(const FieldElement& x, const FieldElement& y);
FieldElement inv(const FieldElement& x);

std::vector<Ordering> orderings(const FieldDescriptor& F);
bool is_nonreal(const FieldDescriptor& F);
FieldElement square_class(const FieldElement& x);
bool is_positive(const FieldElement& x, const Ordering& alpha);
bool is_square(const FieldElement& x);

// Strict total order used to sort symbol lists; places -1 first.
bool element_less(const FieldElement& x, const FieldElement& y);

// Atomic decomposition driving the twisted-logarithm expansion. Factors are
// listed left to right; `inverted` marks a factor entering as its inverse.
struct LiteralFactor {
    FieldElement atom;
    bool inverted = false;
};
// Empty result means `x` is already an atom (or the backend keeps literals whole).
std::vector<LiteralFactor> canonical_factors(const FieldElement& x);

} // namespace mwk
