#pragma once

#include "mwk/field.hpp"

#include <map>
#include <optional>
#include <vector>

namespace mwk {

// <a1,...,an>; the empty list is the zero form
struct DiagonalForm {
    FieldDescriptor field;
    std::vector<FieldElement> entries;

    std::int64_t rank() const { return (std::int64_t)entries.size(); }
};

DiagonalForm make_form(const FieldDescriptor& F, const std::vector<FieldElement>& entries);
DiagonalForm parse_form(const FieldDescriptor& F, const std::string& text); // "1,-1,2"

// place key: 0 encodes the real place, otherwise the rational prime
using HasseMap = std::map<std::int64_t, int>;

struct GWInvariants {
    std::int64_t rank = 0;
    FieldElement disc;                   // square class of the raw entry product
    std::map<int, int> signatures;       // ordering id -> signature
    HasseMap hasse;                      // Q: Hilbert-symbol products at relevant places
};

// Hilbert symbol (a,b)_p over Q; p = 0 is the real place, p = 2 dyadic.
int hilbert_symbol(const Rat& a, const Rat& b, std::int64_t p);

GWInvariants invariants(const DiagonalForm& f);
bool isometric(const DiagonalForm& f, const DiagonalForm& g);

struct WittDecomposition {
    DiagonalForm anisotropic;
    std::int64_t hyperbolic_count = 0;
};
WittDecomposition witt_decompose(const DiagonalForm& f);

bool is_isotropic(const DiagonalForm& f); // backend-specific certificate
bool in_fundamental_power(const DiagonalForm& f, int n);

// Witt-class equality f ~ g (isometric after hyperbolic padding).
bool witt_equal(const DiagonalForm& f, const DiagonalForm& g);
bool witt_zero(const DiagonalForm& f);

// formal difference of forms; the shape degree0_to_gw produces
struct GWClass {
    DiagonalForm pos;
    DiagonalForm neg;

    std::int64_t rank() const { return pos.rank() - neg.rank(); }
};
GWClass gw_zero(const FieldDescriptor& F);
GWClass gw_one(const FieldDescriptor& F); // <1>
GWClass gw_add(const GWClass& x, const GWClass& y);
GWClass gw_neg(const GWClass& x);
GWClass gw_mul(const GWClass& x, const GWClass& y);
bool gw_equal(const GWClass& x, const GWClass& y);
// Witt-class representative of x: pos entries plus negated neg entries
DiagonalForm gw_witt_representative(const GWClass& x);
std::string gw_str(const GWClass& x);

} // namespace mwk
