#include "mwk/mw.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

namespace mwk {

namespace {

using SymKey = std::tuple<std::uint32_t, std::int64_t, std::int64_t, std::int64_t, std::int64_t>;

SymKey sym_key(const FieldElement& e) {
    return {e.code, e.a.num, e.a.den, e.b.num, e.b.den};
}

bool sym_eq(const FieldElement& x, const FieldElement& y) { return sym_key(x) == sym_key(y); }

struct MonKey {
    int eta;
    std::vector<SymKey> syms;
    bool operator<(const MonKey& o) const {
        if (eta != o.eta) return eta < o.eta;
        return syms < o.syms;
    }
};

MonKey mon_key(const MWMonomial& m) {
    MonKey k{m.eta, {}};
    k.syms.reserve(m.syms.size());
    for (const auto& s : m.syms) k.syms.push_back(sym_key(s));
    return k;
}

// twisted-logarithm expansion of [u] into atom symbols
std::vector<MWMonomial> expand_symbol(const FieldElement& u, int depth) {
    std::vector<MWMonomial> atom{MWMonomial{1, 0, {u}}};
    if (depth > 64) throw Internal("literal factorization did not terminate");
    auto factors = canonical_factors(u);
    if (factors.empty()) return atom;

    auto mul_lists = [](const std::vector<MWMonomial>& a, const std::vector<MWMonomial>& b) {
        std::vector<MWMonomial> r;
        for (const auto& x : a)
            for (const auto& y : b) {
                MWMonomial m;
                m.coeff = checked_mul(x.coeff, y.coeff);
                m.eta = x.eta + y.eta;
                m.syms = x.syms;
                m.syms.insert(m.syms.end(), y.syms.begin(), y.syms.end());
                r.push_back(std::move(m));
            }
        return r;
    };

    auto factor_expansion = [&](const LiteralFactor& f) {
        std::vector<MWMonomial> base = expand_symbol(f.atom, depth + 1);
        if (!f.inverted) return base;
        // [x^-1] = -[x] - eta [x][x]
        std::vector<MWMonomial> r;
        for (const auto& m : base) {
            MWMonomial n = m;
            n.coeff = -n.coeff;
            r.push_back(n);
        }
        for (const auto& m : mul_lists(base, base)) {
            MWMonomial n = m;
            n.coeff = -n.coeff;
            n.eta += 1;
            r.push_back(n);
        }
        return r;
    };

    // [f1 * rest] = [f1] + [rest] + eta [f1][rest], folded left to right
    std::vector<std::vector<MWMonomial>> parts;
    parts.reserve(factors.size());
    for (const auto& f : factors) parts.push_back(factor_expansion(f));
    std::vector<MWMonomial> acc = parts.back();
    for (int i = (int)parts.size() - 2; i >= 0; --i) {
        std::vector<MWMonomial> next = parts[i];
        std::vector<MWMonomial> cross = mul_lists(parts[i], acc);
        for (auto& m : cross) m.eta += 1;
        next.insert(next.end(), acc.begin(), acc.end());
        next.insert(next.end(), cross.begin(), cross.end());
        acc = std::move(next);
    }
    return acc;
}

bool backend_expands(const FieldDescriptor& F) {
    return F.kind == FieldKind::Rationals || F.kind == FieldKind::RealQuadratic;
}

// insertion sort counting transpositions; -1 sorts first (element_less)
int sort_syms(std::vector<FieldElement>& syms) {
    int swaps = 0;
    for (size_t i = 1; i < syms.size(); ++i) {
        FieldElement x = syms[i];
        size_t j = i;
        while (j > 0 && element_less(x, syms[j - 1])) {
            syms[j] = syms[j - 1];
            --j;
            ++swaps;
        }
        syms[j] = x;
    }
    return swaps;
}

} // namespace

MWElement mw_zero(const FieldDescriptor& F) { return MWElement{F, {}}; }

MWElement mw_int(const FieldDescriptor& F, std::int64_t n) {
    MWElement e{F, {}};
    if (n) e.terms.push_back(MWMonomial{n, 0, {}});
    return e;
}

MWElement mw_eta(const FieldDescriptor& F, int power) {
    MWElement e{F, {}};
    e.terms.push_back(MWMonomial{1, power, {}});
    return e;
}

MWElement mw_symbol(const FieldElement& u) {
    if (u.is_zero()) throw ZeroElement("symbol entry must be a unit");
    MWElement e{u.field, {}};
    e.terms.push_back(MWMonomial{1, 0, {u}});
    return e;
}

MWElement mw_h(const FieldDescriptor& F) {
    MWElement e{F, {}};
    e.terms.push_back(MWMonomial{2, 0, {}});
    e.terms.push_back(MWMonomial{1, 1, {element_from_int(F, -1)}});
    return e;
}

MWElement mw_eps(const FieldDescriptor& F) {
    MWElement e{F, {}};
    e.terms.push_back(MWMonomial{-1, 0, {}});
    e.terms.push_back(MWMonomial{-1, 1, {element_from_int(F, -1)}});
    return e;
}

static void check_fields(const MWElement& a, const MWElement& b) {
    if (!a.field.same(b.field)) throw FieldMismatch("mixing elements of different fields");
}

MWElement mw_add(const MWElement& a, const MWElement& b) {
    check_fields(a, b);
    MWElement e{a.field, a.terms};
    e.terms.insert(e.terms.end(), b.terms.begin(), b.terms.end());
    return normalize(e);
}

MWElement mw_sub(const MWElement& a, const MWElement& b) { return mw_add(a, mw_neg(b)); }

MWElement mw_neg(const MWElement& a) {
    MWElement e = a;
    for (auto& t : e.terms) t.coeff = -t.coeff;
    return e;
}

MWElement mw_scale(const MWElement& a, std::int64_t c) {
    MWElement e = a;
    for (auto& t : e.terms) t.coeff = checked_mul(t.coeff, c);
    return normalize(e);
}

MWElement mw_mul(const MWElement& a, const MWElement& b) {
    check_fields(a, b);
    MWElement e{a.field, {}};
    for (const auto& x : a.terms)
        for (const auto& y : b.terms) {
            MWMonomial m;
            m.coeff = checked_mul(x.coeff, y.coeff);
            m.eta = x.eta + y.eta;
            m.syms = x.syms;
            m.syms.insert(m.syms.end(), y.syms.begin(), y.syms.end());
            e.terms.push_back(std::move(m));
        }
    return normalize(e);
}

MWElement mw_pow(const MWElement& a, int n) {
    if (n < 0) throw UnknownLiteral("negative power");
    MWElement r = mw_int(a.field, 1);
    for (int i = 0; i < n; ++i) r = mw_mul(r, a);
    return r;
}

MWElement normalize(const MWElement& e) {
    const FieldDescriptor& F = e.field;
    const FieldKind kind = F.kind;

    std::deque<MWMonomial> work(e.terms.begin(), e.terms.end());
    std::map<MonKey, std::int64_t> acc;
    int guard = 0;

    while (!work.empty()) {
        if (++guard > 200000) throw Internal("rewrite did not stabilize");
        MWMonomial m = std::move(work.front());
        work.pop_front();
        if (m.coeff == 0) continue;

        bool dead = false;
        bool eps_pending = false; // central factor eps accumulated from reorderings
        for (int pass = 0; pass < 10000; ++pass) {
            // unit symbols kill or collapse the monomial
            for (size_t i = 0; i < m.syms.size() && !dead; ++i) {
                FieldElement& s = m.syms[i];
                if (s.is_zero()) throw ZeroElement("symbol entry is 0");
                if (kind == FieldKind::AlgebraicallyClosed) { dead = true; break; }
                if (kind == FieldKind::RealClosed) {
                    if (s.a.sign() > 0) { dead = true; break; }
                    if (!s.is_minus_one()) { s = element_from_int(F, -1); }
                    continue;
                }
                if (s.is_one()) { dead = true; break; }
            }
            if (dead) break;

            // over F_q both Milnor K-theory and I^2 vanish in degrees >= 2, so any
            // product of two or more symbols is zero
            if (kind == FieldKind::FiniteField && m.syms.size() >= 2) { dead = true; break; }

            // Steinberg pairs (u+v=1) and opposite pairs (u+v=0) kill the monomial
            for (size_t i = 0; i < m.syms.size() && !dead; ++i)
                for (size_t j = i + 1; j < m.syms.size() && !dead; ++j) {
                    FieldElement s = add(m.syms[i], m.syms[j]);
                    if (s.is_zero() || s.is_one()) dead = true;
                }
            if (dead) break;

            eps_pending ^= (sort_syms(m.syms) & 1) != 0;

            // adjacent [u][u] -> [u][-1]
            bool restart = false;
            for (size_t i = 0; i + 1 < m.syms.size(); ++i) {
                if (sym_eq(m.syms[i], m.syms[i + 1]) && !m.syms[i].is_minus_one()) {
                    m.syms[i + 1] = element_from_int(F, -1);
                    restart = true;
                    break;
                }
            }
            if (restart) continue;

            int m1 = 0;
            for (const auto& s : m.syms) m1 += s.is_minus_one();

            // eta^2 [-1] X -> -2 eta X  and  eta [-1][-1] X -> -2 [-1] X
            if ((m.eta >= 2 && m1 >= 1) || (m.eta >= 1 && m1 >= 2)) {
                for (size_t i = 0; i < m.syms.size(); ++i)
                    if (m.syms[i].is_minus_one()) { m.syms.erase(m.syms.begin() + i); break; }
                m.eta -= 1;
                m.coeff = checked_mul(m.coeff, -2);
                continue;
            }

            if (eps_pending) {
                // eps * M = -M - [-1] eta M
                MWMonomial a = m;
                a.coeff = -a.coeff;
                MWMonomial b = m;
                b.coeff = -b.coeff;
                b.eta += 1;
                b.syms.insert(b.syms.begin(), element_from_int(F, -1));
                work.push_back(std::move(a));
                work.push_back(std::move(b));
                dead = true;
                break;
            }

            // twisted-logarithm expansion of the first composite literal
            if (backend_expands(F)) {
                size_t idx = m.syms.size();
                std::vector<MWMonomial> exp;
                for (size_t i = 0; i < m.syms.size(); ++i) {
                    auto fs = canonical_factors(m.syms[i]);
                    if (!fs.empty()) {
                        exp = expand_symbol(m.syms[i], 0);
                        idx = i;
                        break;
                    }
                }
                if (idx < m.syms.size()) {
                    for (const auto& t : exp) {
                        MWMonomial n;
                        n.coeff = checked_mul(m.coeff, t.coeff);
                        n.eta = m.eta + t.eta;
                        n.syms.assign(m.syms.begin(), m.syms.begin() + idx);
                        n.syms.insert(n.syms.end(), t.syms.begin(), t.syms.end());
                        n.syms.insert(n.syms.end(), m.syms.begin() + idx + 1, m.syms.end());
                        work.push_back(std::move(n));
                    }
                    dead = true;
                    break;
                }
            }
            break; // stable
        }
        if (dead) continue;
        acc[mon_key(m)] += m.coeff;
    }

    MWElement out{F, {}};
    std::vector<MWMonomial> terms;
    for (auto& [key, c] : acc) {
        MWMonomial m;
        m.coeff = c;
        m.eta = key.eta;
        for (const auto& sk : key.syms) {
            FieldElement s;
            s.field = F;
            s.code = std::get<0>(sk);
            s.a = Rat(std::get<1>(sk), std::get<2>(sk));
            s.b = Rat(std::get<3>(sk), std::get<4>(sk));
            m.syms.push_back(std::move(s));
        }
        // torsion coefficient reductions
        std::int64_t mod = 0;
        if (kind == FieldKind::AlgebraicallyClosed && m.eta >= 1) {
            mod = 2;
        } else if (kind == FieldKind::FiniteField) {
            if (m.eta >= 1 && !m.syms.empty())
                mod = 2; // 2(<u>-1) = 0 in W(F_q)
            else if (m.eta >= 1)
                mod = F.q % 4 == 1 ? 2 : 4; // |W(F_q)| = 4, exponent 2 iff q = 1 mod 4
            else if (m.syms.size() == 1 && m.syms[0].is_minus_one())
                mod = 2; // 2[-1] = [1] = 0
        }
        if (mod) {
            m.coeff %= mod;
            if (m.coeff < 0) m.coeff += mod;
        }
        if (!m.coeff) continue;
        terms.push_back(std::move(m));
    }
    std::sort(terms.begin(), terms.end(), [](const MWMonomial& a, const MWMonomial& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        if (a.eta != b.eta) return a.eta < b.eta;
        return mon_key(a).syms < mon_key(b).syms;
    });
    out.terms = std::move(terms);
    return out;
}

bool is_homogeneous(const MWElement& e) {
    MWElement n = normalize(e);
    if (n.terms.empty()) return true;
    int d = n.terms.front().degree();
    for (const auto& t : n.terms)
        if (t.degree() != d) return false;
    return true;
}

int degree(const MWElement& e) {
    MWElement n = normalize(e);
    if (n.terms.empty()) return 0;
    int d = n.terms.front().degree();
    for (const auto& t : n.terms)
        if (t.degree() != d)
            throw NonHomogeneous("degrees " + std::to_string(d) + " and " +
                                 std::to_string(t.degree()) + " coexist");
    return d;
}

MWElement degree_part(const MWElement& e, int n) {
    MWElement norm = normalize(e);
    MWElement out{e.field, {}};
    for (const auto& t : norm.terms)
        if (t.degree() == n) out.terms.push_back(t);
    return out;
}

std::vector<int> degrees_present(const MWElement& e) {
    MWElement norm = normalize(e);
    std::vector<int> ds;
    for (const auto& t : norm.terms)
        if (ds.empty() || ds.back() != t.degree()) ds.push_back(t.degree());
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    return ds;
}

std::string render(const MWElement& e) {
    MWElement n = normalize(e);
    if (n.terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : n.terms) {
        std::int64_t c = t.coeff;
        if (first) {
            if (c < 0) { out += "-"; c = -c; }
            first = false;
        } else {
            out += c < 0 ? " - " : " + ";
            if (c < 0) c = -c;
        }
        std::vector<std::string> pieces;
        if (c != 1 || (t.eta == 0 && t.syms.empty())) pieces.push_back(std::to_string(c));
        if (t.eta == 1) pieces.push_back("eta");
        else if (t.eta > 1) pieces.push_back("eta^" + std::to_string(t.eta));
        for (const auto& s : t.syms) pieces.push_back("[" + s.str() + "]");
        for (size_t i = 0; i < pieces.size(); ++i) {
            if (i) out += "*";
            out += pieces[i];
        }
    }
    return out;
}

} // namespace mwk
