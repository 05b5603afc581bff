#include "mwk/gw.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mwk {

namespace {

void check_entries(const DiagonalForm& f) {
    for (const auto& e : f.entries) {
        if (e.is_zero()) throw ZeroElement("form entry is 0");
        if (!e.field.same(f.field)) throw FieldMismatch("entry from another field");
    }
}

std::int64_t modpow(std::int64_t b, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1;
    b %= m;
    if (b < 0) b += m;
    while (e) {
        if (e & 1) r = (__int128)r * b % m;
        b = (__int128)b * b % m;
        e >>= 1;
    }
    return r;
}

int legendre(std::int64_t u, std::int64_t p) { // p odd prime, p !| u
    std::int64_t r = modpow(u, (p - 1) / 2, p);
    return r == 1 ? 1 : -1;
}

// odd unit part of a rational at 2, as an integer mod 8
std::int64_t odd_part_mod8(const Rat& q) {
    std::int64_t n = q.num, d = q.den;
    while (n % 2 == 0) n /= 2;
    while (d % 2 == 0) d /= 2;
    // 1/d = d mod 8 for odd d
    std::int64_t r = ((n % 8) * (d % 8)) % 8;
    if (r < 0) r += 8;
    return r;
}

// odd primes appearing in the reduced numerator or denominator
void collect_odd_primes(const FieldElement& e, std::set<std::int64_t>& out) {
    auto grab = [&](std::int64_t n) {
        for (auto [p, exp] : factorize(n, e.field.factor_bound))
            if (p > 2) out.insert(p);
    };
    grab(e.a.num);
    grab(e.a.den);
}

bool rational_entries(const DiagonalForm& f) {
    for (const auto& e : f.entries)
        if (!e.b.is_zero()) return false;
    return true;
}

// square class reduction of every entry
DiagonalForm reduced(const DiagonalForm& f) {
    DiagonalForm g{f.field, {}};
    g.entries.reserve(f.entries.size());
    for (const auto& e : f.entries) g.entries.push_back(square_class(e));
    return g;
}

// split rational primes in Q(sqrt(d)); only they see nontrivial Hilbert symbols
// of rational arguments (inert and ramified completions are quadratic extensions).
bool splits_in_quadratic(std::int64_t p, std::int64_t d) {
    if (p == 2) {
        std::int64_t r = d % 8;
        if (r < 0) r += 8;
        return r == 1;
    }
    if (d % p == 0) return false;
    return legendre(d % p, p) == 1;
}

bool is_square_in_Qp(const Rat& x, std::int64_t p) {
    if (x.sign() <= 0 && p == 0) return false;
    if (p == 0) return true;
    int v = valuation(x, p);
    if (v & 1) return false;
    if (p == 2) return odd_part_mod8(x) == 1;
    return legendre(unit_mod_p(x, p), p) == 1;
}

} // namespace

DiagonalForm make_form(const FieldDescriptor& F, const std::vector<FieldElement>& entries) {
    DiagonalForm f{F, entries};
    check_entries(f);
    return f;
}

DiagonalForm parse_form(const FieldDescriptor& F, const std::string& text) {
    DiagonalForm f{F, {}};
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ','))
        f.entries.push_back(parse_element(F, cur));
    check_entries(f);
    return f;
}

int hilbert_symbol(const Rat& a, const Rat& b, std::int64_t p) {
    if (a.is_zero() || b.is_zero()) throw ZeroElement("hilbert symbol of 0");
    if (p == 0) return (a.sign() < 0 && b.sign() < 0) ? -1 : 1;
    if (p == 2) {
        int alpha = valuation(a, 2), beta = valuation(b, 2);
        std::int64_t u = odd_part_mod8(a), v = odd_part_mod8(b);
        auto eps = [](std::int64_t x) { return (x - 1) / 2 % 2; }; // x mod 8
        auto omega = [](std::int64_t x) { return (x * x - 1) / 8 % 2; };
        std::int64_t e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        return e % 2 ? -1 : 1;
    }
    int alpha = valuation(a, p), beta = valuation(b, p);
    std::int64_t u = unit_mod_p(a, p), v = unit_mod_p(b, p);
    int r = 1;
    if ((alpha & 1) && (beta & 1) && ((p - 1) / 2) % 2) r = -r;
    if (beta & 1) r *= legendre(u, p);
    if (alpha & 1) r *= legendre(v, p);
    return r;
}

GWInvariants invariants(const DiagonalForm& f) {
    check_entries(f);
    GWInvariants inv;
    inv.rank = f.rank();

    if (f.entries.empty()) {
        inv.disc = element_from_int(f.field, 1);
    } else {
        FieldElement d = square_class(f.entries[0]);
        for (size_t i = 1; i < f.entries.size(); ++i)
            d = square_class(mul(d, square_class(f.entries[i])));
        inv.disc = d;
    }

    for (const auto& alpha : orderings(f.field)) {
        int s = 0;
        for (const auto& e : f.entries) s += is_positive(e, alpha) ? 1 : -1;
        inv.signatures[alpha.id] = s;
    }

    const bool quad = f.field.kind == FieldKind::RealQuadratic;
    if (f.field.kind == FieldKind::Rationals || (quad && rational_entries(f))) {
        std::set<std::int64_t> places{0, 2};
        for (const auto& e : f.entries) collect_odd_primes(e, places);
        for (std::int64_t p : places) {
            if (quad && (p == 0 || !splits_in_quadratic(p, f.field.d))) continue;
            int s = 1;
            for (size_t i = 0; i < f.entries.size(); ++i)
                for (size_t j = i + 1; j < f.entries.size(); ++j)
                    s *= hilbert_symbol(f.entries[i].a, f.entries[j].a, p);
            inv.hasse[p] = s;
        }
    }
    return inv;
}

namespace {

bool hasse_agree(const HasseMap& x, const HasseMap& y) {
    std::set<std::int64_t> places;
    for (auto& [p, s] : x) places.insert(p);
    for (auto& [p, s] : y) places.insert(p);
    for (std::int64_t p : places) {
        int sx = x.count(p) ? x.at(p) : 1;
        int sy = y.count(p) ? y.at(p) : 1;
        if (sx != sy) return false;
    }
    return true;
}

} // namespace

bool isometric(const DiagonalForm& f, const DiagonalForm& g) {
    if (!f.field.same(g.field)) throw FieldMismatch("forms over different fields");
    if (f.rank() != g.rank()) return false;
    switch (f.field.kind) {
        case FieldKind::AlgebraicallyClosed:
            return true;
        case FieldKind::RealClosed: {
            auto a = invariants(f), b = invariants(g);
            return a.signatures == b.signatures;
        }
        case FieldKind::FiniteField: {
            auto a = invariants(f), b = invariants(g);
            return a.disc == b.disc;
        }
        case FieldKind::Rationals: {
            auto a = invariants(f), b = invariants(g);
            return a.disc == b.disc && a.signatures == b.signatures && hasse_agree(a.hasse, b.hasse);
        }
        case FieldKind::RealQuadratic: {
            DiagonalForm rf = reduced(f), rg = reduced(g);
            if (!rational_entries(rf) || !rational_entries(rg))
                throw UnsupportedEntries("Q(sqrt(d)) isometry needs rational square classes");
            auto a = invariants(rf), b = invariants(rg);
            return a.disc == b.disc && a.signatures == b.signatures && hasse_agree(a.hasse, b.hasse);
        }
    }
    throw Internal("unreachable");
}

namespace {

// brute isotropy over F_q, dimension <= 3 in practice
bool fq_isotropic(const DiagonalForm& f) {
    const auto& t = *f.field.tables;
    std::int64_t q = t.q;
    size_t n = f.entries.size();
    if (n == 0) return false;
    std::vector<std::int64_t> idx(n, 0);
    while (true) {
        bool nonzero = false;
        FieldElement sum = element_from_int(f.field, 0);
        for (size_t i = 0; i < n; ++i) {
            if (idx[i]) nonzero = true;
            FieldElement x = make_fq_element(f.field, idx[i]);
            sum = add(sum, mul(f.entries[i], mul(x, x)));
        }
        if (nonzero && sum.is_zero()) return true;
        size_t i = 0;
        while (i < n && ++idx[i] == q) idx[i++] = 0;
        if (i == n) return false;
    }
}

std::set<std::int64_t> bad_places(const DiagonalForm& f) {
    std::set<std::int64_t> ps{2};
    for (const auto& e : f.entries) collect_odd_primes(e, ps);
    return ps;
}

bool ternary_isotropic_at(const Rat& a, const Rat& b, const Rat& c, std::int64_t p) {
    // a x^2 + b y^2 + c z^2 = 0  <=>  (-ac, -bc)_p = 1
    return hilbert_symbol(-a * c, -b * c, p) == 1;
}

bool q_isotropic(const DiagonalForm& f) {
    size_t n = f.entries.size();
    if (n <= 1) return false;
    int pos = 0, neg = 0;
    for (const auto& e : f.entries) (e.a.sign() > 0 ? pos : neg)++;
    if (pos == 0 || neg == 0) return false; // definite
    if (n == 2) return is_square_rat(-(f.entries[0].a * f.entries[1].a));
    if (n == 3) {
        for (std::int64_t p : bad_places(f))
            if (!ternary_isotropic_at(f.entries[0].a, f.entries[1].a, f.entries[2].a, p))
                return false;
        return true;
    }
    if (n == 4) {
        Rat d = f.entries[0].a * f.entries[1].a * f.entries[2].a * f.entries[3].a;
        for (std::int64_t p : bad_places(f)) {
            int s = 1;
            for (size_t i = 0; i < 4; ++i)
                for (size_t j = i + 1; j < 4; ++j)
                    s *= hilbert_symbol(f.entries[i].a, f.entries[j].a, p);
            bool anis = is_square_in_Qp(d, p) && s == -hilbert_symbol(Rat(-1), Rat(-1), p);
            if (anis) return false;
        }
        return true;
    }
    return true; // indefinite of rank >= 5
}

// does <a,b> represent t over Q
bool binary_represents(const Rat& a, const Rat& b, const Rat& t) {
    DiagonalForm f{FieldDescriptor::rationals(), {}};
    auto F = FieldDescriptor::rationals();
    f.field = F;
    f.entries = {make_element(F, a), make_element(F, b), make_element(F, -t)};
    return q_isotropic(f) || is_square_rat(t / a) || is_square_rat(t / b);
}

} // namespace

bool is_isotropic(const DiagonalForm& f) {
    check_entries(f);
    switch (f.field.kind) {
        case FieldKind::AlgebraicallyClosed:
            return f.rank() >= 2;
        case FieldKind::RealClosed: {
            int pos = 0, neg = 0;
            for (const auto& e : f.entries) (e.a.sign() > 0 ? pos : neg)++;
            return pos > 0 && neg > 0;
        }
        case FieldKind::FiniteField:
            return fq_isotropic(f);
        case FieldKind::Rationals:
            return q_isotropic(f);
        case FieldKind::RealQuadratic:
            throw UnsupportedEntries("isotropy over Q(sqrt(d)) is out of scope");
    }
    throw Internal("unreachable");
}

WittDecomposition witt_decompose(const DiagonalForm& f) {
    check_entries(f);
    const FieldDescriptor& F = f.field;
    switch (F.kind) {
        case FieldKind::AlgebraicallyClosed: {
            WittDecomposition w{{F, {}}, f.rank() / 2};
            if (f.rank() % 2) w.anisotropic.entries.push_back(element_from_int(F, 1));
            return w;
        }
        case FieldKind::RealClosed: {
            int s = 0;
            for (const auto& e : f.entries) s += e.a.sign() > 0 ? 1 : -1;
            WittDecomposition w{{F, {}}, (f.rank() - std::abs(s)) / 2};
            for (int i = 0; i < std::abs(s); ++i)
                w.anisotropic.entries.push_back(element_from_int(F, s > 0 ? 1 : -1));
            return w;
        }
        case FieldKind::FiniteField: {
            auto inv = invariants(f);
            FieldElement g = make_fq_element(F, F.tables->generator);
            FieldElement one = element_from_int(F, 1);
            std::vector<std::vector<FieldElement>> candidates;
            if (f.rank() % 2 == 0) {
                candidates = {{}, {one, one}, {one, g}, {g, g}};
            } else {
                candidates = {{one}, {g}};
            }
            for (auto& c : candidates) {
                if ((std::int64_t)c.size() > f.rank()) continue;
                DiagonalForm cand{F, c};
                if (is_isotropic(cand)) continue;
                std::int64_t m = (f.rank() - cand.rank()) / 2;
                // disc(cand + m*H) = disc(cand) * (-1)^m
                FieldElement d = invariants(cand).disc;
                if (m % 2) d = square_class(mul(d, element_from_int(F, -1)));
                if (d == inv.disc) return {cand, m};
            }
            throw Internal("finite-field decomposition not found");
        }
        case FieldKind::Rationals: {
            DiagonalForm cur = f;
            std::int64_t hyper = 0;
            int guard = 0;
            while (true) {
                if (++guard > 64) throw UnsupportedEntries("decomposition did not stabilize");
                // syntactic hyperbolic pairs
                bool found = false;
                for (size_t i = 0; i < cur.entries.size() && !found; ++i)
                    for (size_t j = i + 1; j < cur.entries.size() && !found; ++j) {
                        FieldElement s = square_class(mul(cur.entries[i], cur.entries[j]));
                        if (s.is_minus_one()) {
                            cur.entries.erase(cur.entries.begin() + j);
                            cur.entries.erase(cur.entries.begin() + i);
                            ++hyper;
                            found = true;
                        }
                    }
                if (found) continue;
                if (!is_isotropic(cur)) return {cur, hyper};
                // <a,b> and <c,..> sharing a represented value t: rewrite both binaries
                bool progressed = false;
                for (size_t i = 0; i < cur.entries.size() && !progressed; ++i)
                    for (size_t j = i + 1; j < cur.entries.size() && !progressed; ++j)
                        for (size_t k = 0; k < cur.entries.size() && !progressed; ++k) {
                            if (k == i || k == j) continue;
                            Rat a = cur.entries[i].a, b = cur.entries[j].a, c = cur.entries[k].a;
                            // does <a,b> represent -c ?
                            if (!binary_represents(a, b, -c)) continue;
                            // <a,b> ~ <-c, -abc>; then -c cancels c
                            FieldElement nc = make_element(F, -c);
                            FieldElement rest = square_class(make_element(F, -(a * b * c)));
                            cur.entries[i] = nc;
                            cur.entries[j] = rest;
                            progressed = true;
                        }
                if (!progressed)
                    throw UnsupportedEntries("isotropic form without reducible pair in bound");
            }
        }
        case FieldKind::RealQuadratic:
            throw UnsupportedEntries("witt decomposition over Q(sqrt(d)) is out of scope");
    }
    throw Internal("unreachable");
}

bool witt_equal(const DiagonalForm& f, const DiagonalForm& g) {
    if (!f.field.same(g.field)) throw FieldMismatch("forms over different fields");
    DiagonalForm a = f, b = g;
    FieldElement one = element_from_int(f.field, 1);
    FieldElement mone = element_from_int(f.field, -1);
    while (a.rank() < b.rank()) {
        a.entries.push_back(one);
        a.entries.push_back(mone);
    }
    while (b.rank() < a.rank()) {
        b.entries.push_back(one);
        b.entries.push_back(mone);
    }
    if (a.rank() != b.rank()) return false; // parity mismatch
    return isometric(a, b);
}

bool witt_zero(const DiagonalForm& f) { return witt_equal(f, DiagonalForm{f.field, {}}); }

namespace {

FieldElement signed_disc(const DiagonalForm& f) {
    auto inv = invariants(f);
    std::int64_t r = f.rank();
    FieldElement d = inv.disc;
    if ((r * (r - 1) / 2) % 2) d = square_class(mul(d, element_from_int(f.field, -1)));
    return d;
}

} // namespace

bool in_fundamental_power(const DiagonalForm& f, int n) {
    check_entries(f);
    if (n <= 0) return true;
    const FieldDescriptor& F = f.field;
    switch (F.kind) {
        case FieldKind::RealClosed: {
            int s = 0;
            for (const auto& e : f.entries) s += e.a.sign() > 0 ? 1 : -1;
            std::int64_t mod = 1;
            for (int i = 0; i < n; ++i) mod *= 2;
            return s % mod == 0;
        }
        case FieldKind::AlgebraicallyClosed:
            return f.rank() % 2 == 0;
        case FieldKind::FiniteField: {
            if (n == 1) return f.rank() % 2 == 0;
            return f.rank() % 2 == 0 && signed_disc(f).is_one();
        }
        case FieldKind::Rationals: {
            if (n == 1) return f.rank() % 2 == 0;
            if (f.rank() % 2 || !signed_disc(f).is_one()) return false;
            if (n == 2) return true;
            if (n > 3) throw UnsupportedDepth("I^n membership over Q supported for n <= 3");
            int s = invariants(f).signatures.at(0);
            if (s % 8) return false;
            // I^3(Q) = Z * <<-1,-1,-1>>, detected by signature after the mod-2 stages
            DiagonalForm target{F, {}};
            int copies = std::abs(s) / 8;
            for (int i = 0; i < copies * 8; ++i)
                target.entries.push_back(element_from_int(F, s > 0 ? 1 : -1));
            return witt_equal(f, target);
        }
        case FieldKind::RealQuadratic:
            throw UnsupportedEntries("I^n membership over Q(sqrt(d)) is out of scope");
    }
    throw Internal("unreachable");
}

GWClass gw_zero(const FieldDescriptor& F) { return GWClass{{F, {}}, {F, {}}}; }

GWClass gw_one(const FieldDescriptor& F) {
    GWClass x = gw_zero(F);
    x.pos.entries.push_back(element_from_int(F, 1));
    return x;
}

GWClass gw_add(const GWClass& x, const GWClass& y) {
    if (!x.pos.field.same(y.pos.field)) throw FieldMismatch("GW classes over different fields");
    GWClass r = x;
    r.pos.entries.insert(r.pos.entries.end(), y.pos.entries.begin(), y.pos.entries.end());
    r.neg.entries.insert(r.neg.entries.end(), y.neg.entries.begin(), y.neg.entries.end());
    return r;
}

GWClass gw_neg(const GWClass& x) { return GWClass{x.neg, x.pos}; }

GWClass gw_mul(const GWClass& x, const GWClass& y) {
    if (!x.pos.field.same(y.pos.field)) throw FieldMismatch("GW classes over different fields");
    const FieldDescriptor& F = x.pos.field;
    GWClass r = gw_zero(F);
    auto emit = [&](const FieldElement& a, const FieldElement& b, bool positive) {
        (positive ? r.pos : r.neg).entries.push_back(square_class(mul(a, b)));
    };
    for (const auto& a : x.pos.entries) for (const auto& b : y.pos.entries) emit(a, b, true);
    for (const auto& a : x.neg.entries) for (const auto& b : y.neg.entries) emit(a, b, true);
    for (const auto& a : x.pos.entries) for (const auto& b : y.neg.entries) emit(a, b, false);
    for (const auto& a : x.neg.entries) for (const auto& b : y.pos.entries) emit(a, b, false);
    return r;
}

DiagonalForm gw_witt_representative(const GWClass& x) {
    DiagonalForm f = x.pos;
    for (const auto& e : x.neg.entries) f.entries.push_back(neg(e));
    return f;
}

bool gw_equal(const GWClass& x, const GWClass& y) {
    if (x.rank() != y.rank()) return false;
    return witt_equal(gw_witt_representative(x), gw_witt_representative(y));
}

std::string gw_str(const GWClass& x) {
    std::string s = "<";
    for (size_t i = 0; i < x.pos.entries.size(); ++i)
        s += (i ? "," : "") + x.pos.entries[i].str();
    s += ">";
    if (!x.neg.entries.empty()) {
        s += " - <";
        for (size_t i = 0; i < x.neg.entries.size(); ++i)
            s += (i ? "," : "") + x.neg.entries[i].str();
        s += ">";
    }
    return s;
}

} // namespace mwk
