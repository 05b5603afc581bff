#pragma once

#include "mwk/poset.hpp"
#include "mwk/primes.hpp"

#include <limits>

namespace mwk {

// Finite window on the classified spectra: rational primes and a chromatic
// height bound; the height-infinity points are always materialized.
struct Truncation {
    std::vector<std::int64_t> primes;
    int height_bound = 2;

    void validate() const;
};

constexpr int kInfiniteHeight = std::numeric_limits<int>::max();

// C_{p,n} in the nonequivariant picture, P(H,p,n) in the C2 picture.
struct TTPoint {
    bool equivariant = false;
    int H = 0;          // 0 = e, 1 = C2 (equivariant only)
    std::int64_t p = 0; // 0 for the bottom point (n = 1)
    int n = 1;          // 1, 2..N, or kInfiniteHeight

    std::string id() const;
    std::string label() const;
    std::string kind() const { return equivariant ? "sh-c2" : "sh-fin"; }

    friend bool operator==(const TTPoint& a, const TTPoint& b) {
        return a.equivariant == b.equivariant && a.H == b.H && a.p == b.p && a.n == b.n;
    }

    // `C(3,2)`, `C(2,inf)`, `C(0,1)`, `P(C2,2,3)`, `P(e,0,1)`, `P(e,5,inf)`
    static TTPoint parse(const std::string& text);
};

SpectralPoset<HomogeneousPrime> build_spec_h_kmw(const FieldDescriptor& F, const Truncation& t);
SpectralPoset<TTPoint> build_spc_sh_fin(const Truncation& t);
SpectralPoset<TTPoint> build_spc_sh_c2(const Truncation& t);

} // namespace mwk
