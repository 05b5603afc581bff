#include "mwk/field.hpp"

#include <algorithm>
#include <cstring>

namespace mwk {

namespace {

constexpr std::int64_t kMaxTableQ = 1 << 16;

bool is_prime_small(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

// F_p[x] arithmetic on coefficient vectors, little-endian.
using Poly = std::vector<std::int64_t>;

Poly poly_mod(Poly a, const Poly& f, std::int64_t p) {
    int df = (int)f.size() - 1;
    while ((int)a.size() > df) {
        std::int64_t c = a.back();
        int shift = (int)a.size() - 1 - df;
        if (c) {
            for (int i = 0; i <= df; ++i) {
                a[i + shift] = (a[i + shift] - c * f[i]) % p;
                if (a[i + shift] < 0) a[i + shift] += p;
            }
        }
        a.pop_back();
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::int64_t p) {
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(r), f, p);
}

bool poly_divides(const Poly& g, Poly a, std::int64_t p) {
    // monic g
    int dg = (int)g.size() - 1;
    while ((int)a.size() - 1 >= dg) {
        while (!a.empty() && a.back() == 0) a.pop_back();
        if ((int)a.size() - 1 < dg) break;
        std::int64_t c = a.back();
        int shift = (int)a.size() - 1 - dg;
        for (int i = 0; i <= dg; ++i) {
            a[i + shift] = (a[i + shift] - c * g[i]) % p;
            if (a[i + shift] < 0) a[i + shift] += p;
        }
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a.empty();
}

// Monic irreducible of degree m over F_p by search; trial division by every
// monic polynomial of degree <= m/2 suffices at these sizes.
Poly find_irreducible(std::int64_t p, int m) {
    std::vector<Poly> divisors;
    for (int deg = 1; deg <= m / 2; ++deg) {
        std::int64_t count = 1;
        for (int i = 0; i < deg; ++i) count *= p;
        for (std::int64_t code = 0; code < count; ++code) {
            Poly g(deg + 1, 0);
            std::int64_t c = code;
            for (int i = 0; i < deg; ++i) { g[i] = c % p; c /= p; }
            g[deg] = 1;
            divisors.push_back(std::move(g));
        }
    }
    std::int64_t count = 1;
    for (int i = 0; i < m; ++i) count *= p;
    for (std::int64_t code = 0; code < count; ++code) {
        Poly f(m + 1, 0);
        std::int64_t c = code;
        for (int i = 0; i < m; ++i) { f[i] = c % p; c /= p; }
        f[m] = 1;
        if (f[0] == 0) continue;
        bool ok = true;
        for (const Poly& g : divisors)
            if (poly_divides(g, f, p)) { ok = false; break; }
        if (ok) return f;
    }
    throw Internal("no irreducible polynomial found");
}

std::uint32_t pack(const Poly& a, std::int64_t p, int m) {
    std::int64_t code = 0, mult = 1;
    for (int i = 0; i < m; ++i) {
        code += (i < (int)a.size() ? a[i] : 0) * mult;
        mult *= p;
    }
    return (std::uint32_t)code;
}

Poly unpack(std::uint32_t code, std::int64_t p, int m) {
    Poly a(m, 0);
    for (int i = 0; i < m; ++i) { a[i] = code % p; code /= (std::uint32_t)p; }
    return a;
}

std::shared_ptr<const FqTables> build_tables(std::int64_t q) {
    if (q < 3 || q % 2 == 0) throw UnsupportedField("finite field order must be odd and > 2");
    if (q > kMaxTableQ) throw UnsupportedField("finite field order exceeds table limit");
    std::int64_t p = q;
    for (std::int64_t c = 3; c * c <= q; c += 2)
        if (q % c == 0) { p = c; break; }
    if (!is_prime_small(p)) throw Internal("prime factor search failed");
    int m = 0;
    std::int64_t n0 = q;
    while (n0 % p == 0) { n0 /= p; ++m; }
    if (n0 != 1) throw UnsupportedField(std::to_string(q) + " is not an odd prime power");

    auto t = std::make_shared<FqTables>();
    t->q = q; t->p = p; t->m = m;
    Poly f = m == 1 ? Poly{0, 1} : find_irreducible(p, m);

    auto mul_codes = [&](std::uint32_t x, std::uint32_t y) {
        Poly r = poly_mulmod(unpack(x, p, m), unpack(y, p, m), f, p);
        return pack(r, p, m);
    };

    // multiplicative order q-1; test candidates against its prime divisors
    std::vector<std::int64_t> prime_divs;
    std::int64_t n = q - 1;
    for (std::int64_t c = 2; c * c <= n; ++c)
        if (n % c == 0) { prime_divs.push_back(c); while (n % c == 0) n /= c; }
    if (n > 1) prime_divs.push_back(n);

    auto pow_code = [&](std::uint32_t x, std::int64_t e) {
        std::uint32_t r = pack(Poly{1}, p, m);
        while (e) {
            if (e & 1) r = mul_codes(r, x);
            x = mul_codes(x, x);
            e >>= 1;
        }
        return r;
    };

    std::uint32_t one = pack(Poly{1}, p, m);
    std::uint32_t gen = 0;
    for (std::uint32_t cand = 1; cand < (std::uint32_t)q; ++cand) {
        bool ok = true;
        for (std::int64_t r : prime_divs)
            if (pow_code(cand, (q - 1) / r) == one) { ok = false; break; }
        if (ok) { gen = cand; break; }
    }
    if (!gen) throw Internal("no generator found");

    t->generator = gen;
    t->exp.resize(q - 1);
    t->log.assign(q, -1);
    std::uint32_t acc = one;
    for (std::int64_t i = 0; i < q - 1; ++i) {
        t->exp[i] = acc;
        t->log[acc] = (std::int32_t)i;
        acc = mul_codes(acc, gen);
    }
    if (acc != one) throw Internal("generator order mismatch");
    return t;
}

void check_same_field(const FieldElement& x, const FieldElement& y) {
    if (!x.field.same(y.field)) throw FieldMismatch("elements of different fields");
}

std::int64_t fq_add_codes(const FqTables& t, std::uint32_t x, std::uint32_t y) {
    if (t.m == 1) return (x + y) % t.q;
    std::uint32_t r = 0, mult = 1;
    for (int i = 0; i < t.m; ++i) {
        std::uint32_t cx = (x / mult) % (std::uint32_t)t.p;
        std::uint32_t cy = (y / mult) % (std::uint32_t)t.p;
        r += ((cx + cy) % (std::uint32_t)t.p) * mult;
        mult *= (std::uint32_t)t.p;
    }
    return r;
}

} // namespace

FieldDescriptor FieldDescriptor::rationals(std::int64_t bound) {
    FieldDescriptor F;
    F.kind = FieldKind::Rationals;
    F.factor_bound = bound;
    return F;
}

FieldDescriptor FieldDescriptor::finite(std::int64_t q, std::int64_t bound) {
    FieldDescriptor F;
    F.kind = FieldKind::FiniteField;
    F.q = q;
    F.factor_bound = bound;
    F.tables = build_tables(q);
    return F;
}

FieldDescriptor FieldDescriptor::real_quadratic(std::int64_t d, std::int64_t bound) {
    if (d <= 1) throw UnsupportedField("real quadratic field needs squarefree d > 1");
    for (auto [p, e] : factorize(d, bound))
        if (e > 1) throw UnsupportedField("d = " + std::to_string(d) + " is not squarefree");
    FieldDescriptor F;
    F.kind = FieldKind::RealQuadratic;
    F.d = d;
    F.factor_bound = bound;
    return F;
}

FieldDescriptor FieldDescriptor::real_closed(std::int64_t bound) {
    FieldDescriptor F;
    F.kind = FieldKind::RealClosed;
    F.factor_bound = bound;
    return F;
}

FieldDescriptor FieldDescriptor::algebraically_closed(std::int64_t bound) {
    FieldDescriptor F;
    F.kind = FieldKind::AlgebraicallyClosed;
    F.factor_bound = bound;
    return F;
}

FieldDescriptor FieldDescriptor::parse(const std::string& text, std::int64_t bound) {
    std::string s;
    for (char c : text)
        if (!std::isspace((unsigned char)c)) s += c;
    if (s == "Q") return rationals(bound);
    if (s == "Rclosed") return real_closed(bound);
    if (s == "Cclosed") return algebraically_closed(bound);
    if (s.rfind("F(", 0) == 0 && s.back() == ')')
        return finite(std::stoll(s.substr(2, s.size() - 3)), bound);
    if (s.rfind("Q(sqrt(", 0) == 0 && s.substr(s.size() - 2) == "))")
        return real_quadratic(std::stoll(s.substr(7, s.size() - 9)), bound);
    throw UnknownLiteral("field literal '" + text + "'");
}

std::string FieldDescriptor::str() const {
    switch (kind) {
        case FieldKind::Rationals: return "Q";
        case FieldKind::FiniteField: return "F(" + std::to_string(q) + ")";
        case FieldKind::RealQuadratic: return "Q(sqrt(" + std::to_string(d) + "))";
        case FieldKind::RealClosed: return "Rclosed";
        case FieldKind::AlgebraicallyClosed: return "Cclosed";
    }
    return "?";
}

bool FieldElement::is_zero() const {
    if (field.kind == FieldKind::FiniteField) return code == 0;
    return a.is_zero() && b.is_zero();
}

bool FieldElement::is_one() const {
    if (field.kind == FieldKind::FiniteField) return code == 1;
    return a == Rat(1) && b.is_zero();
}

bool FieldElement::is_minus_one() const {
    if (field.kind == FieldKind::FiniteField)
        return !is_zero() && fq_add_codes(*field.tables, code, 1) == 0;
    return a == Rat(-1) && b.is_zero();
}

std::string FieldElement::str() const {
    switch (field.kind) {
        case FieldKind::FiniteField: {
            const auto& t = *field.tables;
            if (t.m == 1) return std::to_string(code);
            if (code == 0) return "0";
            if (code == 1) return "1";
            return "g^" + std::to_string(t.log[code]);
        }
        case FieldKind::RealQuadratic: {
            if (b.is_zero()) return a.str();
            std::string s;
            if (!a.is_zero()) s = a.str() + (b.sign() > 0 ? "+" : "");
            if (b == Rat(1)) return s + "sqrt(" + std::to_string(field.d) + ")";
            if (b == Rat(-1)) return s + "-sqrt(" + std::to_string(field.d) + ")";
            return s + b.str() + "*sqrt(" + std::to_string(field.d) + ")";
        }
        default: return a.str();
    }
}

bool operator==(const FieldElement& x, const FieldElement& y) {
    if (!x.field.same(y.field)) return false;
    if (x.field.kind == FieldKind::FiniteField) return x.code == y.code;
    return x.a == y.a && x.b == y.b;
}

FieldElement make_element(const FieldDescriptor& F, const Rat& a, const Rat& b) {
    if (F.kind == FieldKind::FiniteField) {
        if (!b.is_zero() || !a.is_integer()) throw UnknownLiteral("bad finite-field element");
        return make_fq_element(F, a.num);
    }
    if (F.kind != FieldKind::RealQuadratic && !b.is_zero())
        throw UnknownLiteral("sqrt part only meaningful in Q(sqrt(d))");
    FieldElement e;
    e.field = F;
    e.a = a;
    e.b = b;
    return e;
}

FieldElement make_fq_element(const FieldDescriptor& F, std::int64_t v) {
    if (F.kind != FieldKind::FiniteField) throw FieldMismatch("not a finite field");
    const auto& t = *F.tables;
    if (t.m == 1) {
        v %= t.q;
        if (v < 0) v += t.q;
    } else if (v < 0 || v >= t.q) {
        throw UnknownLiteral("finite-field code out of range");
    }
    FieldElement e;
    e.field = F;
    e.code = (std::uint32_t)v;
    return e;
}

FieldElement fq_generator_power(const FieldDescriptor& F, std::int64_t k) {
    if (F.kind != FieldKind::FiniteField) throw FieldMismatch("not a finite field");
    const auto& t = *F.tables;
    k %= (t.q - 1);
    if (k < 0) k += t.q - 1;
    FieldElement e;
    e.field = F;
    e.code = t.exp[k];
    return e;
}

FieldElement element_from_int(const FieldDescriptor& F, std::int64_t n) {
    if (F.kind == FieldKind::FiniteField) return make_fq_element(F, n);
    return make_element(F, Rat(n));
}

FieldElement neg(const FieldElement& x) {
    if (x.field.kind == FieldKind::FiniteField) {
        if (x.code == 0) return x;
        const auto& t = *x.field.tables;
        std::int64_t half = (t.q - 1) / 2;
        FieldElement e = x;
        e.code = t.exp[(t.log[x.code] + half) % (t.q - 1)];
        // -1 = g^((q-1)/2) since q is odd
        return e;
    }
    FieldElement e = x;
    e.a = -e.a;
    e.b = -e.b;
    return e;
}

FieldElement add(const FieldElement& x, const FieldElement& y) {
    check_same_field(x, y);
    if (x.field.kind == FieldKind::FiniteField) {
        FieldElement e = x;
        e.code = (std::uint32_t)fq_add_codes(*x.field.tables, x.code, y.code);
        return e;
    }
    FieldElement e = x;
    e.a = x.a + y.a;
    e.b = x.b + y.b;
    return e;
}

FieldElement mul(const FieldElement& x, const FieldElement& y) {
    check_same_field(x, y);
    if (x.field.kind == FieldKind::FiniteField) {
        FieldElement e = x;
        if (x.code == 0 || y.code == 0) { e.code = 0; return e; }
        const auto& t = *x.field.tables;
        e.code = t.exp[(t.log[x.code] + t.log[y.code]) % (t.q - 1)];
        return e;
    }
    FieldElement e = x;
    if (x.field.kind == FieldKind::RealQuadratic) {
        Rat d((std::int64_t)x.field.d);
        e.a = x.a * y.a + x.b * y.b * d;
        e.b = x.a * y.b + x.b * y.a;
    } else {
        e.a = x.a * y.a;
    }
    return e;
}

FieldElement inv(const FieldElement& x) {
    if (x.is_zero()) throw ZeroElement("inverse of 0");
    if (x.field.kind == FieldKind::FiniteField) {
        const auto& t = *x.field.tables;
        FieldElement e = x;
        e.code = t.exp[(t.q - 1 - t.log[x.code]) % (t.q - 1)];
        return e;
    }
    FieldElement e = x;
    if (x.field.kind == FieldKind::RealQuadratic) {
        Rat d((std::int64_t)x.field.d);
        Rat n = x.a * x.a - x.b * x.b * d; // field norm, nonzero since d is not a square
        e.a = x.a / n;
        e.b = -x.b / n;
    } else {
        e.a = Rat(1) / x.a;
    }
    return e;
}

std::vector<Ordering> orderings(const FieldDescriptor& F) {
    switch (F.kind) {
        case FieldKind::FiniteField:
        case FieldKind::AlgebraicallyClosed:
            return {};
        case FieldKind::Rationals:
        case FieldKind::RealClosed:
            return {Ordering{F, 0}};
        case FieldKind::RealQuadratic:
            return {Ordering{F, 0}, Ordering{F, 1}}; // 0: sqrt(d) > 0, 1: sqrt(d) < 0
    }
    return {};
}

bool is_nonreal(const FieldDescriptor& F) { return orderings(F).empty(); }

namespace {

// sign of a + b*sqrt(d) under the embedding sending sqrt(d) to s*|sqrt(d)|
int quad_sign(const Rat& a, const Rat& b, std::int64_t d, int s) {
    Rat bs = s > 0 ? b : -b;
    int sa = a.sign(), sb = bs.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // compare |a| against |b|*sqrt(d) exactly: a^2 vs b^2 d
    Rat lhs = a * a, rhs = bs * bs * Rat(d);
    if (lhs == rhs) throw Internal("sqrt(d) rational");
    return lhs < rhs ? sb : sa;
}

// exact squareness test in Q(sqrt(d))
bool quad_is_square(const FieldElement& x) {
    std::int64_t d = x.field.d;
    if (x.is_zero()) return true;
    if (quad_sign(x.a, x.b, d, +1) < 0 || quad_sign(x.a, x.b, d, -1) < 0) return false;
    if (x.b.is_zero()) {
        if (is_square_rat(x.a)) return true;
        return is_square_rat(x.a * Rat(d)); // a = d*t^2 means a = (t*sqrt(d))^2
    }
    Rat n = x.a * x.a - x.b * x.b * Rat(d);
    if (n.sign() < 0 || !is_square_rat(n)) return false;
    Rat s(isqrt64(n.num), isqrt64(n.den));
    for (const Rat& t : {(x.a + s) / Rat(2), (x.a - s) / Rat(2)}) {
        if (t.sign() <= 0) continue;
        if (!is_square_rat(t)) continue;
        Rat u(isqrt64(t.num), isqrt64(t.den));
        if (u.is_zero()) continue;
        Rat v = x.b / (Rat(2) * u);
        if (u * u + v * v * Rat(d) == x.a && Rat(2) * u * v == x.b) return true;
    }
    return false;
}

std::int64_t rat_squarefree(const Rat& q, std::int64_t bound) {
    // q ~ num*den modulo squares
    return squarefree_mul(squarefree_part(q.num, bound), squarefree_part(q.den, bound));
}

// canonical representative of the rational square class t inside Q(sqrt(d)):
// t ~ t*d there, pick the smaller |value| (positive on ties).
std::int64_t quad_rational_class(std::int64_t t_sf, std::int64_t d, std::int64_t bound) {
    std::int64_t alt = squarefree_mul(t_sf, squarefree_part(d, bound));
    std::int64_t x = t_sf, y = alt;
    auto key = [](std::int64_t v) { return std::make_pair(v < 0 ? -v : v, v < 0); };
    return key(x) <= key(y) ? x : y;
}

FieldElement quad_square_class(const FieldElement& x0) {
    const std::int64_t d = x0.field.d;
    const std::int64_t bound = x0.field.factor_bound;
    FieldElement x = x0;

    // clear denominators (multiplying by squares)
    {
        std::int64_t m = checked_mul(x.a.den, x.b.den) / std::gcd(x.a.den, x.b.den);
        Rat m2 = Rat(m) * Rat(m);
        x.a = x.a * m2;
        x.b = x.b * m2;
    }
    // strip square content
    {
        std::int64_t g = std::gcd(x.a.num < 0 ? -x.a.num : x.a.num,
                                  x.b.num < 0 ? -x.b.num : x.b.num);
        if (g > 1) {
            for (auto [p, e] : factorize(g, bound)) {
                while (e >= 2) {
                    Rat p2((std::int64_t)p * p);
                    x.a = x.a / p2;
                    x.b = x.b / p2;
                    e -= 2;
                }
            }
        }
    }

    if (x.b.is_zero())
        return make_element(x.field, Rat(quad_rational_class(rat_squarefree(x.a, bound), d, bound)));
    if (x.a.is_zero()) {
        // b*sqrt(d) ~ sf(b)*sqrt(d), and b*sqrt(d) ~ b'*sqrt(d) iff b*b' ~ 1 or d
        std::int64_t c = quad_rational_class(rat_squarefree(x.b, bound), d, bound);
        return make_element(x.field, Rat(0), Rat(c));
    }

    // rational class: norm(x) a square forces x = y^2 / (2(a±s))
    Rat n = x.a * x.a - x.b * x.b * Rat(d);
    if (n.sign() > 0 && is_square_rat(n)) {
        Rat s(isqrt64(n.num), isqrt64(n.den));
        Rat t = Rat(2) * (x.a + s);
        if (t.is_zero()) t = Rat(2) * (x.a - s);
        return make_element(x.field, Rat(quad_rational_class(rat_squarefree(t, bound), d, bound)));
    }
    // rational * sqrt(d) class: check x*sqrt(d)
    FieldElement xs = mul(x, make_element(x.field, Rat(0), Rat(1)));
    Rat ns = xs.a * xs.a - xs.b * xs.b * Rat(d);
    if (ns.sign() > 0 && is_square_rat(ns)) {
        Rat s(isqrt64(ns.num), isqrt64(ns.den));
        Rat t = Rat(2) * (xs.a + s);
        if (t.is_zero()) t = Rat(2) * (xs.a - s);
        // x ~ t / sqrt(d) ~ t*d * sqrt(d) modulo squares; fold t*d through the rational rule
        std::int64_t c = quad_rational_class(
            squarefree_mul(rat_squarefree(t, bound), squarefree_part(d, bound)), d, bound);
        return make_element(x.field, Rat(0), Rat(c));
    }

    // bounded square-divisor descent for irrational classes
    constexpr std::int64_t H = 24;
    bool progress = true;
    auto height = [](const FieldElement& e) {
        auto habs = [](const Rat& r) { return (r.num < 0 ? -r.num : r.num) + r.den; };
        return habs(e.a) + habs(e.b);
    };
    while (progress) {
        progress = false;
        for (std::int64_t u = 0; u <= H && !progress; ++u) {
            for (std::int64_t v = 1; v <= H && !progress; ++v) {
                FieldElement w = make_element(x.field, Rat(u), Rat(v));
                FieldElement w2 = mul(w, w);
                FieldElement y = mul(x, inv(w2));
                if (y.a.is_integer() && y.b.is_integer() && height(y) < height(x)) {
                    x = y;
                    progress = true;
                }
            }
        }
    }
    // coprime reduced representative
    std::int64_t g = std::gcd(x.a.num < 0 ? -x.a.num : x.a.num,
                              x.b.num < 0 ? -x.b.num : x.b.num);
    if (g > 1)
        for (auto [p, e] : factorize(g, bound))
            while (e >= 2) { x.a = x.a / Rat(p * p); x.b = x.b / Rat(p * p); e -= 2; }
    return x;
}

} // namespace

FieldElement square_class(const FieldElement& x) {
    if (x.is_zero()) throw ZeroElement("square class of 0");
    const FieldDescriptor& F = x.field;
    switch (F.kind) {
        case FieldKind::AlgebraicallyClosed:
            return make_element(F, Rat(1));
        case FieldKind::RealClosed:
            return make_element(F, Rat(x.a.sign()));
        case FieldKind::FiniteField: {
            const auto& t = *F.tables;
            bool sq = t.log[x.code] % 2 == 0;
            FieldElement e = x;
            e.code = sq ? 1 : t.generator;
            return e;
        }
        case FieldKind::Rationals:
            return make_element(F, Rat(rat_squarefree(x.a, F.factor_bound)));
        case FieldKind::RealQuadratic:
            return quad_square_class(x);
    }
    throw Internal("unreachable");
}

bool is_positive(const FieldElement& x, const Ordering& alpha) {
    if (x.is_zero()) throw ZeroElement("sign of 0");
    if (!x.field.same(alpha.field)) throw OrderingMismatch("ordering belongs to another field");
    switch (x.field.kind) {
        case FieldKind::Rationals:
        case FieldKind::RealClosed:
            return x.a.sign() > 0;
        case FieldKind::RealQuadratic:
            return quad_sign(x.a, x.b, x.field.d, alpha.id == 0 ? +1 : -1) > 0;
        default:
            throw OrderingMismatch("field has no orderings");
    }
}

bool is_square(const FieldElement& x) {
    if (x.is_zero()) return true;
    switch (x.field.kind) {
        case FieldKind::AlgebraicallyClosed: return true;
        case FieldKind::RealClosed: return x.a.sign() > 0;
        case FieldKind::FiniteField: return x.field.tables->log[x.code] % 2 == 0;
        case FieldKind::Rationals: return is_square_rat(x.a);
        case FieldKind::RealQuadratic: return quad_is_square(x);
    }
    return false;
}

bool element_less(const FieldElement& x, const FieldElement& y) {
    bool xm = x.is_minus_one(), ym = y.is_minus_one();
    if (xm != ym) return xm;
    switch (x.field.kind) {
        case FieldKind::FiniteField: return x.code < y.code;
        case FieldKind::RealQuadratic: {
            if (x.a != y.a) return x.a < y.a;
            return x.b < y.b;
        }
        default: return x.a < y.a;
    }
}

namespace {

void push_rat_factors(const FieldDescriptor& F, const Rat& q, std::vector<LiteralFactor>& out) {
    if (q.sign() < 0) out.push_back({element_from_int(F, -1), false});
    for (auto [p, e] : factorize(q.num, F.factor_bound))
        for (int i = 0; i < e; ++i) out.push_back({element_from_int(F, p), false});
    for (auto [p, e] : factorize(q.den, F.factor_bound))
        for (int i = 0; i < e; ++i) out.push_back({element_from_int(F, p), true});
}

} // namespace

std::vector<LiteralFactor> canonical_factors(const FieldElement& x) {
    if (x.is_zero()) throw ZeroElement("factor of 0");
    const FieldDescriptor& F = x.field;
    std::vector<LiteralFactor> out;
    switch (F.kind) {
        case FieldKind::FiniteField:
        case FieldKind::RealClosed:
        case FieldKind::AlgebraicallyClosed:
            return out; // literals are atoms (or collapsed before use)
        case FieldKind::Rationals: {
            if (x.is_one() || x.is_minus_one()) return out;
            Rat q = x.a;
            if (q == Rat(1)) return out;
            push_rat_factors(F, q, out);
            if (out.size() == 1 && !out[0].inverted) return {}; // already an atom
            return out;
        }
        case FieldKind::RealQuadratic: {
            if (x.b.is_zero()) {
                if (x.is_one() || x.is_minus_one()) return out;
                push_rat_factors(F, x.a, out);
                if (out.size() == 1 && !out[0].inverted) return {};
                return out;
            }
            // clear denominators with squares first: u = (u * m^2) * (m^-2)
            if (x.a.den != 1 || x.b.den != 1) {
                std::int64_t m = checked_mul(x.a.den, x.b.den) / std::gcd(x.a.den, x.b.den);
                FieldElement y = mul(x, make_element(F, Rat(checked_mul(m, m))));
                out = canonical_factors(y);
                if (out.empty()) out.push_back({y, false});
                out.push_back({element_from_int(F, m), true});
                out.push_back({element_from_int(F, m), true});
                return out;
            }
            if (x.a.is_zero()) {
                // b * sqrt(d)
                FieldElement root = make_element(F, Rat(0), Rat(1));
                if (x.b == Rat(1)) return out; // sqrt(d) is an atom
                push_rat_factors(F, x.b, out);
                out.push_back({root, false});
                return out;
            }
            // rational content
            std::int64_t g = std::gcd(x.a.num < 0 ? -x.a.num : x.a.num,
                                      x.b.num < 0 ? -x.b.num : x.b.num);
            int sign = x.a.sign();
            if (g > 1 || sign < 0) {
                std::int64_t c = sign * g;
                FieldElement w = mul(x, inv(element_from_int(F, c)));
                push_rat_factors(F, Rat(c), out);
                auto rest = canonical_factors(w);
                if (rest.empty()) out.push_back({w, false});
                else out.insert(out.end(), rest.begin(), rest.end());
                return out;
            }
            // coprime, positive leading part: split off squares via the norm test.
            // x = y^2 / t with y = x + s, t = 2(a+s), valid whenever norm(x) = s^2.
            // Only split when the content-reduced y is strictly smaller than x, so
            // the factorization is well-founded; otherwise keep x as an atom.
            Rat n = x.a * x.a - x.b * x.b * Rat(F.d);
            if (n.sign() > 0 && is_square_rat(n)) {
                Rat s(isqrt64(n.num), isqrt64(n.den));
                FieldElement y = add(x, make_element(F, s));
                std::int64_t hy = (y.a.num < 0 ? -y.a.num : y.a.num) + (y.b.num < 0 ? -y.b.num : y.b.num);
                std::int64_t hx = (x.a.num < 0 ? -x.a.num : x.a.num) + (x.b.num < 0 ? -x.b.num : x.b.num);
                std::int64_t gy = std::gcd(y.a.num < 0 ? -y.a.num : y.a.num,
                                           y.b.num < 0 ? -y.b.num : y.b.num);
                if (gy > 0 && hy / gy < hx) {
                    Rat t = Rat(2) * (x.a + s);
                    out.push_back({y, false});
                    out.push_back({y, false});
                    for (auto [p, e] : factorize(t.num, F.factor_bound))
                        for (int i = 0; i < e; ++i) out.push_back({element_from_int(F, p), true});
                    return out;
                }
            }
            return out; // atom
        }
    }
    return out;
}

FieldElement parse_element(const FieldDescriptor& F, const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace((unsigned char)c)) s += c;
    if (s.empty()) throw UnknownLiteral("empty element literal");

    if (F.kind == FieldKind::FiniteField) {
        try {
            if (s.rfind("g^", 0) == 0) return fq_generator_power(F, std::stoll(s.substr(2)));
            if (s == "g") return fq_generator_power(F, 1);
            return make_fq_element(F, std::stoll(s));
        } catch (const std::exception& e) {
            throw UnknownLiteral("bad element '" + text + "' for " + F.str());
        }
    }

    // [-]a/b +/- c/e*sqrt(d) with each piece optional
    size_t pos = 0;
    auto parse_unsigned = [&]() -> Rat {
        size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) throw UnknownLiteral("expected number in '" + text + "'");
        std::int64_t num = std::stoll(s.substr(start, pos - start));
        std::int64_t den = 1;
        if (pos < s.size() && s[pos] == '/') {
            ++pos;
            size_t dstart = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            if (pos == dstart) throw UnknownLiteral("expected denominator in '" + text + "'");
            den = std::stoll(s.substr(dstart, pos - dstart));
            if (den == 0) throw UnknownLiteral("zero denominator in '" + text + "'");
        }
        return Rat(num, den);
    };
    auto parse_sqrt = [&]() -> void {
        pos += 5; // past "sqrt("
        size_t dstart = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == dstart || pos >= s.size() || s[pos] != ')')
            throw UnknownLiteral("bad sqrt literal in '" + text + "'");
        std::int64_t d = std::stoll(s.substr(dstart, pos - dstart));
        ++pos;
        if (F.kind != FieldKind::RealQuadratic || d != F.d)
            throw UnknownLiteral("sqrt(" + std::to_string(d) + ") not in " + F.str());
    };

    Rat a(0), b(0);
    bool saw_any = false;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+') {
            ++pos;
        } else if (s[pos] == '-') {
            sign = -1;
            ++pos;
        } else if (saw_any) {
            throw UnknownLiteral("unexpected '" + s.substr(pos) + "'");
        }
        if (s.rfind("sqrt(", pos) == pos) {
            parse_sqrt();
            b = b + Rat(sign);
        } else {
            Rat coeff = parse_unsigned();
            if (pos < s.size() && (s[pos] == '*' || s.rfind("sqrt(", pos) == pos)) {
                if (s[pos] == '*') ++pos;
                if (s.rfind("sqrt(", pos) != pos)
                    throw UnknownLiteral("expected sqrt( in '" + text + "'");
                parse_sqrt();
                b = b + Rat(sign) * coeff;
            } else {
                a = a + Rat(sign) * coeff;
            }
        }
        saw_any = true;
    }
    if (!saw_any) throw UnknownLiteral("empty element literal");
    return make_element(F, a, b);
}

} // namespace mwk
