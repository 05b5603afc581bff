#include "mwk/primes.hpp"

#include <sstream>

namespace mwk {

std::string HomogeneousPrime::id() const {
    switch (tag) {
        case 1: return "type1";
        case 2: return "type2:p=" + std::to_string(p);
        case 3: return "type3";
        case 4: return "type4:a=" + std::to_string(alpha);
        case 5: return "type5:a=" + std::to_string(alpha);
        case 6: return "type6:a=" + std::to_string(alpha) + ",p=" + std::to_string(p);
    }
    throw Internal("bad prime tag");
}

std::string HomogeneousPrime::label() const {
    switch (tag) {
        case 1: return "([F^x],eta)";
        case 2: return "([F^x],eta," + std::to_string(p) + ")";
        case 3: return "([F^x],2)";
        case 4: return "([P_a" + std::to_string(alpha) + "],h)";
        case 5: return "([P_a" + std::to_string(alpha) + "],eta,2)";
        case 6: return "([P_a" + std::to_string(alpha) + "],h," + std::to_string(p) + ")";
    }
    throw Internal("bad prime tag");
}

HomogeneousPrime HomogeneousPrime::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace((unsigned char)c)) s += c;
    if (s.rfind("type", 0) != 0 || s.size() < 5) throw UnknownLiteral("prime literal '" + text + "'");
    HomogeneousPrime pr;
    pr.tag = s[4] - '0';
    if (pr.tag < 1 || pr.tag > 6) throw UnknownLiteral("prime literal '" + text + "'");
    std::string rest = s.size() > 5 ? s.substr(5) : "";
    if (!rest.empty()) {
        if (rest[0] != ':') throw UnknownLiteral("prime literal '" + text + "'");
        std::istringstream in(rest.substr(1));
        std::string item;
        while (std::getline(in, item, ',')) {
            if (item.rfind("a=", 0) == 0) pr.alpha = std::stoi(item.substr(2));
            else if (item.rfind("p=", 0) == 0) pr.p = std::stoll(item.substr(2));
            else throw UnknownLiteral("prime literal '" + text + "'");
        }
    }
    bool needs_a = pr.tag >= 4, needs_p = pr.tag == 2 || pr.tag == 6;
    if (needs_a != (pr.alpha >= 0) || needs_p != (pr.p != 0))
        throw UnknownLiteral("prime literal '" + text + "' has wrong fields for its type");
    if (pr.tag == 6 && pr.p == 2) throw UnknownLiteral("type6 requires an odd prime");
    return pr;
}

void validate_prime(const HomogeneousPrime& pr, const FieldDescriptor& F) {
    if (pr.tag < 1 || pr.tag > 6) throw PrimeFieldMismatch("bad tag");
    if (pr.tag >= 4) {
        auto ords = orderings(F);
        if (ords.empty()) throw PrimeFieldMismatch("ordering-type prime over a nonreal field");
        if (pr.alpha < 0 || pr.alpha >= (int)ords.size())
            throw PrimeFieldMismatch("ordering index out of range for " + F.str());
    }
    if ((pr.tag == 2 || pr.tag == 6) && pr.p < 2) throw PrimeFieldMismatch("missing prime p");
    if (pr.tag == 6 && pr.p == 2) throw PrimeFieldMismatch("type6 requires p odd");
}

std::string ResidueFieldDesc::str() const {
    switch (kind) {
        case ResidueKind::Q: return "Q";
        case ResidueKind::Fp: return "F_" + std::to_string(p);
        case ResidueKind::F2EtaLaurent: return "F_2[eta^{+-1}]";
        case ResidueKind::QEtaLaurent: return "Q[eta^{+-1}]";
        case ResidueKind::F2MinusOneLaurent: return "F_2[[-1]^{+-1}]";
        case ResidueKind::FpEtaLaurent: return "F_" + std::to_string(p) + "[eta^{+-1}]";
    }
    throw Internal("bad residue kind");
}

ResidueFieldDesc residue_field(const HomogeneousPrime& pr) {
    switch (pr.tag) {
        case 1: return {ResidueKind::Q, 0};
        case 2: return {ResidueKind::Fp, pr.p};
        case 3: return {ResidueKind::F2EtaLaurent, 2};
        case 4: return {ResidueKind::QEtaLaurent, 0};
        case 5: return {ResidueKind::F2MinusOneLaurent, 2};
        case 6: return {ResidueKind::FpEtaLaurent, pr.p};
    }
    throw Internal("bad prime tag");
}

namespace {

std::int64_t coeff_modulus(const ResidueFieldDesc& rf) {
    switch (rf.kind) {
        case ResidueKind::Q:
        case ResidueKind::QEtaLaurent: return 0;
        case ResidueKind::Fp:
        case ResidueKind::FpEtaLaurent: return rf.p;
        case ResidueKind::F2EtaLaurent:
        case ResidueKind::F2MinusOneLaurent: return 2;
    }
    return 0;
}

void reduce(ResidueElement& e) {
    std::int64_t m = coeff_modulus(e.rf);
    for (auto it = e.coeffs.begin(); it != e.coeffs.end();) {
        if (m) {
            it->second %= m;
            if (it->second < 0) it->second += m;
        }
        it = it->second == 0 ? e.coeffs.erase(it) : std::next(it);
    }
}

} // namespace

ResidueElement residue_zero(const ResidueFieldDesc& rf) { return ResidueElement{rf, {}}; }

ResidueElement residue_add(const ResidueElement& a, const ResidueElement& b) {
    if (!(a.rf == b.rf)) throw PrimeFieldMismatch("mixed residue fields");
    ResidueElement r = a;
    for (auto& [k, c] : b.coeffs) r.coeffs[k] = checked_add(r.coeffs.count(k) ? r.coeffs[k] : 0, c);
    reduce(r);
    return r;
}

ResidueElement residue_mul(const ResidueElement& a, const ResidueElement& b) {
    if (!(a.rf == b.rf)) throw PrimeFieldMismatch("mixed residue fields");
    ResidueElement r = residue_zero(a.rf);
    for (auto& [k1, c1] : a.coeffs)
        for (auto& [k2, c2] : b.coeffs)
            r.coeffs[k1 + k2] = checked_add(r.coeffs.count(k1 + k2) ? r.coeffs[k1 + k2] : 0,
                                            checked_mul(c1, c2));
    reduce(r);
    return r;
}

std::string ResidueElement::str() const {
    if (coeffs.empty()) return "0";
    const char* gen = rf.kind == ResidueKind::F2MinusOneLaurent ? "[-1]" : "eta";
    std::string out;
    bool first = true;
    for (auto& [k, c] : coeffs) {
        std::int64_t v = c;
        if (first) {
            if (v < 0) { out += "-"; v = -v; }
            first = false;
        } else {
            out += c < 0 ? " - " : " + ";
            if (v < 0) v = -v;
        }
        if (v != 1 || k == 0) out += std::to_string(v);
        if (k != 0) {
            if (v != 1) out += "*";
            out += gen;
            if (k != 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

ResidueElement evaluate_at_prime(const MWElement& e, const HomogeneousPrime& pr) {
    validate_prime(pr, e.field);
    if (!is_homogeneous(e)) throw NonHomogeneous("evaluation needs a homogeneous element");
    ResidueFieldDesc rf = residue_field(pr);
    ResidueElement out = residue_zero(rf);
    std::optional<Ordering> alpha;
    if (pr.tag >= 4) alpha = orderings(e.field)[pr.alpha];

    for (const auto& m : e.terms) {
        std::int64_t c = m.coeff;
        int expo = 0;
        bool dead = false;
        switch (pr.tag) {
            case 1:
            case 2:
                // [u] -> 0, eta -> 0
                if (!m.syms.empty() || m.eta > 0) dead = true;
                break;
            case 3:
                // [u] -> 0, eta transcendent
                if (!m.syms.empty()) dead = true;
                expo = m.eta;
                break;
            case 4:
            case 6:
                // [u] -> 0 for positive u, else -2 eta^{-1}; eta transcendent
                expo = m.eta;
                for (const auto& s : m.syms) {
                    if (is_positive(s, *alpha)) { dead = true; break; }
                    c = checked_mul(c, -2);
                    expo -= 1;
                }
                break;
            case 5:
                // eta -> 0; [u] -> 0 for positive u, else the [-1] generator
                if (m.eta > 0) { dead = true; break; }
                for (const auto& s : m.syms) {
                    if (is_positive(s, *alpha)) { dead = true; break; }
                    expo += 1;
                }
                break;
        }
        if (dead || c == 0) continue;
        ResidueElement term = residue_zero(rf);
        term.coeffs[expo] = c;
        out = residue_add(out, term);
    }
    return out;
}

bool contains(const HomogeneousPrime& pr, const MWElement& e) {
    return evaluate_at_prime(e, pr).is_zero();
}

} // namespace mwk
