#include "mwk/quotients.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mwk {

namespace {

bool all_minus_one(const std::vector<FieldElement>& syms) {
    for (const auto& s : syms)
        if (!s.is_minus_one()) return false;
    return true;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t e, std::int64_t p) {
    e %= (p - 1);
    if (e < 0) e += p - 1;
    base %= p;
    if (base < 0) base += p;
    std::int64_t r = 1;
    while (e) {
        if (e & 1) r = (__int128)r * base % p;
        base = (__int128)base * base % p;
        e >>= 1;
    }
    return r;
}

// tame symbol residue of {u,v} at odd p, as a value in 1..p-1
std::int64_t tame_residue(const Rat& u, const Rat& v, std::int64_t p) {
    int a = valuation(u, p), b = valuation(v, p);
    if (a == 0 && b == 0) return 1;
    // (-1)^{ab} u^b / v^a mod p, unit parts
    std::int64_t uu = unit_mod_p(u, p), vv = unit_mod_p(v, p);
    std::int64_t r = mod_pow(uu, b, p);
    r = (__int128)r * mod_pow(mod_pow(vv, a, p), p - 2, p) % p;
    if ((a & 1) && (b & 1)) r = p - r;
    return r % p == 0 ? 1 : r % p;
}

void km_accumulate_deg2_Q(const MWMonomial& m, KMDegree& out, std::int64_t bound) {
    const Rat& u = m.syms[0].a;
    const Rat& v = m.syms[1].a;
    std::set<std::int64_t> ps;
    auto grab = [&](const Rat& r) {
        for (auto [p, e] : factorize(r.num, bound))
            if (p > 2) ps.insert(p);
        for (auto [p, e] : factorize(r.den, bound))
            if (p > 2) ps.insert(p);
    };
    grab(u);
    grab(v);
    for (std::int64_t p : ps) {
        std::int64_t t = tame_residue(u, v, p);
        std::int64_t acc = out.tame.count(p) ? out.tame[p] : 1;
        out.tame[p] = (__int128)acc * mod_pow(t, m.coeff, p) % p;
    }
    if (m.coeff % 2) {
        out.dyadic *= hilbert_symbol(u, v, 2);
    }
}

// common degree of the raw (pre-rewrite) terms, when they agree
std::optional<int> formal_degree(const MWElement& e) {
    std::optional<int> d;
    for (const auto& t : e.terms) {
        int td = t.degree();
        if (d && *d != td) return std::nullopt;
        d = td;
    }
    return d;
}

} // namespace

Tri KMDegree::zero_status() const {
    bool invariants_trivial = integer == 0 && (!unit || unit->is_one()) && dyadic == 1;
    for (auto& [p, r] : tame)
        if (r != 1) invariants_trivial = false;
    for (auto& [a, b] : real_bits)
        if (b) invariants_trivial = false;
    if (!invariants_trivial) return Tri::NonZero;
    if (exact) return Tri::Zero;
    return residual ? Tri::Unknown : Tri::Zero;
}

Tri KMImage::zero_status() const {
    Tri r = Tri::Zero;
    for (const auto& part : parts) {
        Tri t = part.zero_status();
        if (t == Tri::NonZero) return Tri::NonZero;
        if (t == Tri::Unknown) r = Tri::Unknown;
    }
    return r;
}

std::string KMDegree::str() const {
    std::ostringstream os;
    os << "deg " << degree << ": ";
    if (degree == 0) {
        os << integer;
    } else if (degree == 1) {
        os << "{" << (unit ? unit->str() : "1") << "}";
    } else {
        bool any = false;
        for (auto& [p, r] : tame)
            if (r != 1) { os << "tame_" << p << "=" << r << " "; any = true; }
        if (dyadic != 1) { os << "dyadic=-1 "; any = true; }
        for (auto& [a, b] : real_bits)
            if (b) { os << "sign_a" << a << "=1 "; any = true; }
        if (!any) os << (zero_status() == Tri::Zero ? "0" : "0?");
    }
    return os.str();
}

std::string KMImage::str() const {
    if (parts.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) s += (i ? "; " : "") + parts[i].str();
    return s;
}

KMImage mod_eta(const MWElement& e0) {
    MWElement e = normalize(e0);
    const FieldDescriptor& F = e.field;
    KMImage img{F, {}};

    std::map<int, std::vector<const MWMonomial*>> by_degree;
    for (const auto& t : e.terms)
        if (t.eta == 0) by_degree[(int)t.syms.size()].push_back(&t);

    auto ords = orderings(F);
    for (auto& [n, monos] : by_degree) {
        KMDegree part;
        part.degree = n;
        if (n == 0) {
            for (auto* m : monos) part.integer += m->coeff;
        } else if (n == 1) {
            FieldElement prod = element_from_int(F, 1);
            for (auto* m : monos) {
                FieldElement base = m->syms[0];
                std::int64_t c = m->coeff;
                if (c < 0) { base = inv(base); c = -c; }
                for (std::int64_t i = 0; i < c; ++i) prod = mul(prod, base);
            }
            part.unit = prod;
        } else {
            switch (F.kind) {
                case FieldKind::FiniteField:
                case FieldKind::AlgebraicallyClosed:
                    break; // zero in degrees >= 2
                case FieldKind::RealClosed: {
                    int bit = 0;
                    for (auto* m : monos)
                        if (all_minus_one(m->syms)) bit ^= m->coeff & 1;
                    part.real_bits[0] = bit;
                    break;
                }
                case FieldKind::Rationals: {
                    if (n == 2) {
                        for (auto* m : monos) km_accumulate_deg2_Q(*m, part, F.factor_bound);
                    } else {
                        int bit = 0;
                        bool res = false;
                        for (auto* m : monos) {
                            bool allneg = true;
                            for (const auto& s : m->syms) allneg &= s.a.sign() < 0;
                            if (allneg) bit ^= m->coeff & 1;
                            if (!all_minus_one(m->syms)) res = true;
                        }
                        part.real_bits[0] = bit;
                        part.residual = res;
                        part.exact = !res;
                    }
                    break;
                }
                case FieldKind::RealQuadratic: {
                    bool res = false;
                    for (const auto& alpha : ords) part.real_bits[alpha.id] = 0;
                    for (auto* m : monos) {
                        for (const auto& alpha : ords) {
                            bool allneg = true;
                            for (const auto& s : m->syms) allneg &= !is_positive(s, alpha);
                            if (allneg) part.real_bits[alpha.id] ^= m->coeff & 1;
                        }
                        if (!all_minus_one(m->syms)) res = true;
                    }
                    part.residual = res;
                    part.exact = !res;
                    break;
                }
            }
        }
        if (part.degree == 0 && part.integer == 0) continue;
        img.parts.push_back(std::move(part));
    }
    return img;
}

bool km_same(const KMImage& a, const KMImage& b) {
    std::map<int, const KMDegree*> pa, pb;
    for (const auto& p : a.parts) pa[p.degree] = &p;
    for (const auto& p : b.parts) pb[p.degree] = &p;
    std::set<int> degs;
    for (auto& [d, p] : pa) degs.insert(d);
    for (auto& [d, p] : pb) degs.insert(d);
    for (int d : degs) {
        KMDegree zero;
        zero.degree = d;
        const KMDegree* x = pa.count(d) ? pa[d] : &zero;
        const KMDegree* y = pb.count(d) ? pb[d] : &zero;
        if (x->integer != y->integer) return false;
        bool xu = x->unit && !x->unit->is_one(), yu = y->unit && !y->unit->is_one();
        if (xu != yu) return false;
        if (xu && !(*x->unit == *y->unit)) return false;
        auto tame_of = [](const KMDegree* p) {
            std::map<std::int64_t, std::int64_t> t;
            for (auto& [q, r] : p->tame)
                if (r != 1) t[q] = r;
            return t;
        };
        if (tame_of(x) != tame_of(y)) return false;
        if (x->dyadic != y->dyadic) return false;
        auto bits_of = [](const KMDegree* p) {
            std::map<int, int> t;
            for (auto& [a2, b2] : p->real_bits)
                if (b2) t[a2] = b2;
            return t;
        };
        if (bits_of(x) != bits_of(y)) return false;
    }
    return true;
}

namespace {

// Witt class of e: [u] contributes (<u> - 1) eta^{-1}; the Witt part of a
// monomial is coeff * prod (<u_i> - 1).
GWClass witt_part(const MWElement& e) {
    const FieldDescriptor& F = e.field;
    GWClass acc = gw_zero(F);
    for (const auto& m : e.terms) {
        if (m.syms.size() > 20) throw Overflow("symbol string too long for Witt expansion");
        size_t n = m.syms.size();
        GWClass prod = gw_one(F);
        if (m.coeff < 0) prod = gw_neg(prod);
        std::int64_t c = m.coeff < 0 ? -m.coeff : m.coeff;
        for (size_t i = 0; i < n; ++i) {
            GWClass bracket = gw_zero(F); // <u> - 1
            bracket.pos.entries.push_back(m.syms[i]);
            bracket.neg.entries.push_back(element_from_int(F, 1));
            prod = gw_mul(prod, bracket);
        }
        for (std::int64_t i = 0; i < c; ++i) acc = gw_add(acc, prod);
    }
    return acc;
}

} // namespace

Tri WittLaurent::zero_status() const {
    try {
        return witt_zero(witt_class) ? Tri::Zero : Tri::NonZero;
    } catch (const UnsupportedEntries&) {
        return Tri::Unknown;
    } catch (const FactorBoundExceeded&) {
        return Tri::Unknown;
    }
}

std::string WittLaurent::str() const {
    std::string s = "<";
    for (size_t i = 0; i < witt_class.entries.size(); ++i)
        s += (i ? "," : "") + witt_class.entries[i].str();
    s += ">";
    if (eta_exponent) s += " * eta^" + std::to_string(eta_exponent);
    return s;
}

WittLaurent invert_eta(const MWElement& e0) {
    MWElement e = normalize(e0);
    if (!is_homogeneous(e)) throw NonHomogeneous("invert_eta needs a homogeneous element");
    int n = e.terms.empty() ? formal_degree(e0).value_or(0) : degree(e);
    GWClass w = witt_part(e);
    return WittLaurent{gw_witt_representative(w), -n};
}

WittKImage mod_h(const MWElement& e0) {
    MWElement e = normalize(e0);
    if (!is_homogeneous(e)) throw NonHomogeneous("mod_h needs a homogeneous element");
    int n = e.terms.empty() ? formal_degree(e0).value_or(0) : degree(e);
    GWClass w = witt_part(e);
    WittKImage img{n, gw_witt_representative(w), false};
    if (n >= 1) img.verified_in_In = in_fundamental_power(img.witt_class, n);
    else img.verified_in_In = true;
    return img;
}

std::string LaurentZ::str() const {
    if (coeffs.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [k, c] : coeffs) {
        std::int64_t v = c;
        if (first) {
            if (v < 0) { s += "-"; v = -v; }
            first = false;
        } else {
            s += c < 0 ? " - " : " + ";
            if (v < 0) v = -v;
        }
        if (v != 1 || k == 0) s += std::to_string(v);
        if (k != 0) {
            if (v != 1) s += "*";
            s += "X";
            if (k != 1) s += "^" + std::to_string(k);
        }
    }
    return s;
}

LaurentZ invert_minus_one(const MWElement& e0) {
    if (e0.field.kind != FieldKind::RealClosed)
        throw UnsupportedField("[-1]-inversion is defined over the real closed backend");
    MWElement e = normalize(e0);
    LaurentZ out;
    for (const auto& m : e.terms) {
        // entries are all -1 after normalization; eta -> -2 X^-1, [-1] -> X
        std::int64_t c = m.coeff;
        int expo = (int)m.syms.size() - m.eta;
        for (int i = 0; i < m.eta; ++i) c = checked_mul(c, -2);
        out.coeffs[expo] += c;
    }
    for (auto it = out.coeffs.begin(); it != out.coeffs.end();)
        it = it->second == 0 ? out.coeffs.erase(it) : std::next(it);
    return out;
}

GWClass degree0_to_gw(const MWElement& e0) {
    MWElement e = normalize(e0);
    if (!e.terms.empty() && degree(e) != 0)
        throw NonZeroDegree("degree-0 element required");
    return witt_part(e); // same expansion; rank bookkeeping kept by GWClass
}

namespace {

Tri witt_status(const MWElement& component) {
    try {
        GWClass w = witt_part(component);
        return witt_zero(gw_witt_representative(w)) ? Tri::Zero : Tri::NonZero;
    } catch (const UnsupportedEntries&) {
        return Tri::Unknown;
    } catch (const FactorBoundExceeded&) {
        return Tri::Unknown;
    } catch (const UnsupportedDepth&) {
        return Tri::Unknown;
    }
}

} // namespace

EqVerdict eq(const MWElement& a, const MWElement& b) {
    if (!a.field.same(b.field)) throw FieldMismatch("comparing elements of different fields");
    MWElement diff = mw_sub(a, b);
    if (diff.is_zero()) return EqVerdict::Equal;

    bool unknown = false;
    for (int n : degrees_present(diff)) {
        MWElement c = degree_part(diff, n);
        KMImage km = mod_eta(c);
        Tri ks = km.zero_status();
        if (ks == Tri::NonZero) return EqVerdict::Distinct;
        Tri ws = witt_status(c);
        if (ws == Tri::NonZero) return EqVerdict::Distinct;
        if (ks == Tri::Unknown || ws == Tri::Unknown) unknown = true;
    }
    return unknown ? EqVerdict::EqualModuloDivisible : EqVerdict::Equal;
}

} // namespace mwk
