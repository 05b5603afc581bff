#pragma once

#include "mwk/field.hpp"

#include <vector>

namespace mwk {

// c * eta^k [u1]...[un], degree n - k
struct MWMonomial {
    std::int64_t coeff = 0;
    int eta = 0;
    std::vector<FieldElement> syms;

    int degree() const { return (int)syms.size() - eta; }
};

// Integer combination of monomials over a fixed field. `terms` is kept in
// normalized form: monomials pairwise distinct, sorted by (degree, eta, syms).
struct MWElement {
    FieldDescriptor field;
    std::vector<MWMonomial> terms;

    bool is_zero() const { return terms.empty(); }
};

enum class EqVerdict { Equal, Distinct, EqualModuloDivisible };

MWElement mw_zero(const FieldDescriptor& F);
MWElement mw_int(const FieldDescriptor& F, std::int64_t n);
MWElement mw_eta(const FieldDescriptor& F, int power = 1);
MWElement mw_symbol(const FieldElement& u);
MWElement mw_h(const FieldDescriptor& F);   // 2 + [-1]*eta
MWElement mw_eps(const FieldDescriptor& F); // -(1 + [-1]*eta)

MWElement mw_add(const MWElement& a, const MWElement& b);
MWElement mw_sub(const MWElement& a, const MWElement& b);
MWElement mw_mul(const MWElement& a, const MWElement& b);
MWElement mw_neg(const MWElement& a);
MWElement mw_scale(const MWElement& a, std::int64_t c);
MWElement mw_pow(const MWElement& a, int n);

// Rewrite to the fixed point of the relation-oriented rule system. Sound for
// the defining relations; not a complete decision procedure (see eq).
MWElement normalize(const MWElement& e);

int degree(const MWElement& e); // NonHomogeneous unless all terms share one
bool is_homogeneous(const MWElement& e);

// Terms of the given degree, as a normalized element.
MWElement degree_part(const MWElement& e, int n);
std::vector<int> degrees_present(const MWElement& e);

std::string render(const MWElement& e);

} // namespace mwk
