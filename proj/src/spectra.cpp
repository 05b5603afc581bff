#include "mwk/spectra.hpp"

#include <algorithm>

namespace mwk {

void Truncation::validate() const {
    if (primes.empty()) throw InvalidTruncation("at least one rational prime required");
    if (height_bound < 2) throw InvalidTruncation("height bound must be at least 2");
    for (auto p : primes) {
        if (p < 2) throw InvalidTruncation("bad prime " + std::to_string(p));
        for (std::int64_t c = 2; c * c <= p; ++c)
            if (p % c == 0) throw InvalidTruncation(std::to_string(p) + " is not prime");
    }
    for (size_t i = 1; i < primes.size(); ++i)
        if (primes[i] <= primes[i - 1]) throw InvalidTruncation("primes must be ascending");
}

std::string TTPoint::id() const {
    std::string height = n == kInfiniteHeight ? "inf" : std::to_string(n);
    if (!equivariant) return "C(" + std::to_string(p) + "," + height + ")";
    return std::string("P(") + (H ? "C2" : "e") + "," + std::to_string(p) + "," + height + ")";
}

std::string TTPoint::label() const { return id(); }

TTPoint TTPoint::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace((unsigned char)c)) s += c;
    TTPoint pt;
    size_t body = 0;
    if (s.rfind("C(", 0) == 0) {
        pt.equivariant = false;
        body = 2;
    } else if (s.rfind("P(", 0) == 0) {
        pt.equivariant = true;
        body = 2;
    } else {
        throw UnknownLiteral("point literal '" + text + "'");
    }
    if (s.empty() || s.back() != ')') throw UnknownLiteral("point literal '" + text + "'");
    std::string inner = s.substr(body, s.size() - body - 1);
    std::vector<std::string> parts;
    std::string cur;
    for (char c : inner) {
        if (c == ',') { parts.push_back(cur); cur.clear(); }
        else cur += c;
    }
    parts.push_back(cur);
    try {
        if (pt.equivariant) {
            if (parts.size() != 3) throw UnknownLiteral(text);
            if (parts[0] == "C2") pt.H = 1;
            else if (parts[0] == "e") pt.H = 0;
            else throw UnknownLiteral(text);
            pt.p = std::stoll(parts[1]);
            pt.n = parts[2] == "inf" ? kInfiniteHeight : std::stoi(parts[2]);
        } else {
            if (parts.size() != 2) throw UnknownLiteral(text);
            pt.p = std::stoll(parts[0]);
            pt.n = parts[1] == "inf" ? kInfiniteHeight : std::stoi(parts[1]);
        }
    } catch (const std::invalid_argument&) {
        throw UnknownLiteral("point literal '" + text + "'");
    }
    if (pt.n == 1) pt.p = 0; // C_{p,1} is stored uniquely as the bottom point
    return pt;
}

SpectralPoset<HomogeneousPrime> build_spec_h_kmw(const FieldDescriptor& F, const Truncation& t) {
    t.validate();
    SpectralPoset<HomogeneousPrime> P;
    auto ords = orderings(F);
    const bool has2 = std::find(t.primes.begin(), t.primes.end(), 2) != t.primes.end();

    auto add = [&](HomogeneousPrime pr) {
        P.points.push_back(pr);
        return (int)P.points.size() - 1;
    };

    int t1 = add({1, -1, 0});
    std::map<std::int64_t, int> t2;
    for (auto p : t.primes) t2[p] = add({2, -1, p});
    int t3 = add({3, -1, 0});
    std::map<int, int> t4, t5;
    std::map<std::pair<int, std::int64_t>, int> t6;
    for (const auto& a : ords) {
        t4[a.id] = add({4, a.id, 0});
        t5[a.id] = add({5, a.id, 0});
        for (auto p : t.primes)
            if (p != 2) t6[{a.id, p}] = add({6, a.id, p});
    }

    for (auto p : t.primes) P.covers.push_back({t1, t2[p]});
    if (has2) P.covers.push_back({t3, t2[2]});
    for (const auto& a : ords) {
        P.covers.push_back({t4[a.id], t3});
        P.covers.push_back({t4[a.id], t5[a.id]});
        for (auto p : t.primes)
            if (p != 2) P.covers.push_back({t4[a.id], t6[{a.id, p}]});
        if (has2) P.covers.push_back({t5[a.id], t2[2]});
    }
    P.finalize();
    return P;
}

SpectralPoset<TTPoint> build_spc_sh_fin(const Truncation& t) {
    t.validate();
    SpectralPoset<TTPoint> P;
    auto add = [&](std::int64_t p, int n) {
        P.points.push_back(TTPoint{false, 0, p, n});
        return (int)P.points.size() - 1;
    };
    int bottom = add(0, 1);
    for (auto p : t.primes) {
        int prev = bottom;
        for (int n = 2; n <= t.height_bound; ++n) {
            int cur = add(p, n);
            P.covers.push_back({prev, cur});
            prev = cur;
        }
        int top = add(p, kInfiniteHeight);
        P.covers.push_back({prev, top});
    }
    P.finalize();
    return P;
}

SpectralPoset<TTPoint> build_spc_sh_c2(const Truncation& t) {
    t.validate();
    SpectralPoset<TTPoint> P;
    auto add = [&](int H, std::int64_t p, int n) {
        P.points.push_back(TTPoint{true, H, p, n});
        return (int)P.points.size() - 1;
    };
    auto idx = [&](int H, std::int64_t p, int n) {
        for (int i = 0; i < (int)P.points.size(); ++i)
            if (P.points[i].H == H && P.points[i].p == p && P.points[i].n == n) return i;
        throw Internal("missing point");
    };

    for (int H : {1, 0}) { // C2 towers, then e towers
        int bottom = add(H, 0, 1);
        for (auto p : t.primes) {
            int prev = bottom;
            for (int n = 2; n <= t.height_bound; ++n) {
                int cur = add(H, p, n);
                P.covers.push_back({prev, cur});
                prev = cur;
            }
            int top = add(H, p, kInfiniteHeight);
            P.covers.push_back({prev, top});
        }
    }

    // cross covers between the fixed-points towers at p = 2, shifted by one:
    // (C2,0,1) < (e,2,2); (C2,2,n) < (e,2,n+1); (C2,2,inf) < (e,2,inf);
    // the pattern visible at p = 3, 5 has no cross edges and is extrapolated
    // to all odd columns.
    const bool has2 = std::find(t.primes.begin(), t.primes.end(), 2) != t.primes.end();
    if (has2) {
        P.covers.push_back({idx(1, 0, 1), idx(0, 2, 2)});
        for (int n = 2; n < t.height_bound; ++n)
            P.covers.push_back({idx(1, 2, n), idx(0, 2, n + 1)});
        P.covers.push_back({idx(1, 2, kInfiniteHeight), idx(0, 2, kInfiniteHeight)});
    }
    P.finalize();
    return P;
}

} // namespace mwk
