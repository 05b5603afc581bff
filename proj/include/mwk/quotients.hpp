#pragma once

#include "mwk/gw.hpp"
#include "mwk/mw.hpp"

#include <map>
#include <optional>

namespace mwk {

enum class Tri { Zero, NonZero, Unknown };

// Milnor K-theory image of one homogeneous degree, reduced by backend rules.
struct KMDegree {
    int degree = 0;
    std::int64_t integer = 0;                    // degree 0
    std::optional<FieldElement> unit;            // degree 1: exact product of entries
    std::map<std::int64_t, std::int64_t> tame;   // Q, degree 2: odd p -> residue in F_p^x
    int dyadic = 1;                              // Q, degree 2: product of (u,v)_2
    std::map<int, int> real_bits;                // ordering id -> Z/2 all-negative parity
    bool residual = false;                       // uncertified symbol mass survives
    bool exact = true;                           // the data is a complete invariant here

    Tri zero_status() const;
    std::string str() const;
};

struct KMImage {
    FieldDescriptor field;
    std::vector<KMDegree> parts; // one per degree present

    Tri zero_status() const;
    bool is_zero_certified() const { return zero_status() == Tri::Zero; }
    std::string str() const;
};

KMImage mod_eta(const MWElement& e);
// invariant-level comparison (values compared degreewise)
bool km_same(const KMImage& a, const KMImage& b);

// Image in W(F)[eta^{±1}]: Witt class times eta^(-degree).
struct WittLaurent {
    DiagonalForm witt_class; // representative form of the Witt class
    int eta_exponent = 0;    // -degree(e)

    Tri zero_status() const;
    std::string str() const;
};

WittLaurent invert_eta(const MWElement& e); // NonHomogeneous unless homogeneous

// Witt K-theory image: degree n plus a Witt class checked to lie in I^n.
struct WittKImage {
    int degree = 0;
    DiagonalForm witt_class;
    bool verified_in_In = false;
};

WittKImage mod_h(const MWElement& e);

// Z[[-1]^{±1}] image over the real closed backend: eta -> -2 X^-1, [-1] -> X.
struct LaurentZ {
    std::map<int, std::int64_t> coeffs; // exponent -> coefficient

    bool is_zero() const { return coeffs.empty(); }
    std::string str() const;
};

LaurentZ invert_minus_one(const MWElement& e);

GWClass degree0_to_gw(const MWElement& e); // NonZeroDegree unless degree 0

EqVerdict eq(const MWElement& a, const MWElement& b);

} // namespace mwk
