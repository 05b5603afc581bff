#pragma once

#include "mwk/spectra.hpp"

namespace mwk {

// Point of Spec(GW(F)): preimage of (0) or (p) under dim, or under sgn_alpha.
// sgn_alpha^{-1}(2Z) equals dim^{-1}(2Z) (signature and rank agree mod 2), so
// p = 2 is always stored as the dim point.
struct SpecGWPoint {
    bool sgn = false;
    int alpha = -1;
    std::int64_t p = 0; // 0 = generic

    static SpecGWPoint dim(std::int64_t p) { return {false, -1, p}; }
    static SpecGWPoint sgn_pt(int alpha, std::int64_t p) {
        if (p == 2) return dim(2);
        return {true, alpha, p};
    }

    std::string id() const;
    std::string label() const;
    std::string kind() const { return "gw"; }

    friend bool operator==(const SpecGWPoint& a, const SpecGWPoint& b) {
        return a.sgn == b.sgn && a.alpha == b.alpha && a.p == b.p;
    }
    friend bool operator<(const SpecGWPoint& a, const SpecGWPoint& b) {
        return std::tie(a.sgn, a.alpha, a.p) < std::tie(b.sgn, b.alpha, b.p);
    }
};

SpecGWPoint degree_zero(const HomogeneousPrime& pr);

// Spec(GW(F)) truncated to the given primes: the nonreal case is the Spec Z
// fan; the real case is the degree-zero image of the classified spectrum.
SpectralPoset<SpecGWPoint> spec_gw(const FieldDescriptor& F, const std::vector<std::int64_t>& primes);

HomogeneousPrime rho_bullet_sh_fin(const TTPoint& x, const FieldDescriptor& F);
HomogeneousPrime rho_bullet_sh_c2(const TTPoint& x, const Ordering& alpha);

std::vector<std::pair<std::string, HomogeneousPrime>>
cellular_field_primes(const FieldDescriptor& F, const Truncation& t);

// beta = -1 encodes the algebraic closure; otherwise an ordering id of target.
HomogeneousPrime base_change(const HomogeneousPrime& closed_prime, const FieldDescriptor& target,
                             int beta);

struct CoverageCheck {
    std::string name;
    bool applicable = true;
    bool pass = true;
    std::vector<std::string> defects; // ids of points missed (or extra)
};

struct CoverageReport {
    FieldDescriptor field;
    Truncation trunc;
    std::vector<CoverageCheck> checks;
    std::int64_t spec_h_size = 0;
    std::int64_t spec_gw_size = 0;
    std::int64_t orderings_count = 0;

    bool all_pass() const {
        for (const auto& c : checks)
            if (c.applicable && !c.pass) return false;
        return true;
    }
};

CoverageReport coverage_report(const FieldDescriptor& F, const Truncation& t);

// The unique minimal classified prime containing every generator, over the
// instantiated truncation.
HomogeneousPrime classify(const std::vector<MWElement>& generators, const FieldDescriptor& F,
                          const Truncation& t);

// sample generator set realizing a prime at data level (used by classify
// round trips and the containment tests)
std::vector<MWElement> generator_set(const HomogeneousPrime& pr, const FieldDescriptor& F);

} // namespace mwk
