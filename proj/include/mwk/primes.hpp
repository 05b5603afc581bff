#pragma once

#include "mwk/mw.hpp"

#include <map>
#include <optional>

namespace mwk {

// One of the six classified homogeneous primes of Milnor-Witt K-theory:
//   1: ([F^x],eta)    2: ([F^x],eta,p)   3: ([F^x],2)
//   4: ([P_a],h)      5: ([P_a],eta,2)   6: ([P_a],h,p), p odd
struct HomogeneousPrime {
    int tag = 1;
    int alpha = -1;     // ordering id, tags 4..6
    std::int64_t p = 0; // rational prime, tags 2 and 6

    std::string id() const;
    std::string label() const;
    std::string kind() const { return "kmw"; }

    friend bool operator==(const HomogeneousPrime& a, const HomogeneousPrime& b) {
        return a.tag == b.tag && a.alpha == b.alpha && a.p == b.p;
    }
    friend bool operator<(const HomogeneousPrime& a, const HomogeneousPrime& b) {
        return std::tie(a.tag, a.alpha, a.p) < std::tie(b.tag, b.alpha, b.p);
    }

    // `type1`, `type2:p=3`, `type4:a=0`, `type6:a=1,p=5`
    static HomogeneousPrime parse(const std::string& text);
};

// tags 4..6 need a formally real field with the ordering present; tag 6 odd p
void validate_prime(const HomogeneousPrime& pr, const FieldDescriptor& F);

enum class ResidueKind { Q, Fp, F2EtaLaurent, QEtaLaurent, F2MinusOneLaurent, FpEtaLaurent };

struct ResidueFieldDesc {
    ResidueKind kind = ResidueKind::Q;
    std::int64_t p = 0;
    std::string str() const;
    friend bool operator==(const ResidueFieldDesc& a, const ResidueFieldDesc& b) {
        return a.kind == b.kind && a.p == b.p;
    }
};

ResidueFieldDesc residue_field(const HomogeneousPrime& pr);

// Laurent monomial algebra over Q, F_p or F_2 in one graded generator
// (eta, or [-1] for type 5); exponent -> coefficient.
struct ResidueElement {
    ResidueFieldDesc rf;
    std::map<int, std::int64_t> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    std::string str() const;
    friend bool operator==(const ResidueElement& a, const ResidueElement& b) {
        return a.rf == b.rf && a.coeffs == b.coeffs;
    }
};

ResidueElement residue_zero(const ResidueFieldDesc& rf);
ResidueElement residue_add(const ResidueElement& a, const ResidueElement& b);
ResidueElement residue_mul(const ResidueElement& a, const ResidueElement& b);

// Ring-homomorphic evaluation of a homogeneous element at a prime.
ResidueElement evaluate_at_prime(const MWElement& e, const HomogeneousPrime& pr);
bool contains(const HomogeneousPrime& pr, const MWElement& e);

} // namespace mwk
