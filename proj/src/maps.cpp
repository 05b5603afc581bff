#include "mwk/maps.hpp"

#include <algorithm>
#include <set>

namespace mwk {

std::string SpecGWPoint::id() const {
    if (!sgn) return "gw:dim:" + std::to_string(p);
    return "gw:sgn:a=" + std::to_string(alpha) + ":p=" + std::to_string(p);
}

std::string SpecGWPoint::label() const {
    std::string ideal = p == 0 ? "(0)" : "(" + std::to_string(p) + ")";
    if (!sgn) return "dim^-1" + ideal;
    return "sgn_a" + std::to_string(alpha) + "^-1" + ideal;
}

SpecGWPoint degree_zero(const HomogeneousPrime& pr) {
    switch (pr.tag) {
        case 1: return SpecGWPoint::dim(0);
        case 2: return SpecGWPoint::dim(pr.p);
        case 3: return SpecGWPoint::dim(2);
        case 4: return SpecGWPoint::sgn_pt(pr.alpha, 0);
        case 5: return SpecGWPoint::dim(2);
        case 6: return SpecGWPoint::sgn_pt(pr.alpha, pr.p);
    }
    throw Internal("bad prime tag");
}

SpectralPoset<SpecGWPoint> spec_gw(const FieldDescriptor& F,
                                   const std::vector<std::int64_t>& primes) {
    Truncation t{primes, 2};
    auto kmw = build_spec_h_kmw(F, t);

    SpectralPoset<SpecGWPoint> P;
    std::vector<int> img(kmw.points.size());
    for (size_t i = 0; i < kmw.points.size(); ++i) {
        SpecGWPoint q = degree_zero(kmw.points[i]);
        int at = -1;
        for (size_t j = 0; j < P.points.size(); ++j)
            if (P.points[j] == q) at = (int)j;
        if (at < 0) {
            P.points.push_back(q);
            at = (int)P.points.size() - 1;
        }
        img[i] = at;
    }

    // order induced through the image, then transitively reduced
    size_t n = P.points.size();
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (size_t i = 0; i < n; ++i) le[i][i] = true;
    for (size_t i = 0; i < kmw.points.size(); ++i)
        for (size_t j = 0; j < kmw.points.size(); ++j)
            if (kmw.leq((int)i, (int)j)) le[img[i]][img[j]] = true;
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i)
            if (le[i][k])
                for (size_t j = 0; j < n; ++j)
                    if (le[k][j]) le[i][j] = true;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (i != j && le[i][j] && le[j][i]) throw Internal("image order not antisymmetric");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i == j || !le[i][j]) continue;
            bool direct = true;
            for (size_t k = 0; k < n; ++k)
                if (k != i && k != j && le[i][k] && le[k][j]) direct = false;
            if (direct) P.covers.push_back({(int)i, (int)j});
        }
    P.finalize();
    return P;
}

HomogeneousPrime rho_bullet_sh_fin(const TTPoint& x, const FieldDescriptor&) {
    if (x.equivariant) throw UnknownPoint("expected a C_{p,n} point");
    if (x.n == 1) return {1, -1, 0};
    return {2, -1, x.p};
}

HomogeneousPrime rho_bullet_sh_c2(const TTPoint& x, const Ordering& alpha) {
    if (!x.equivariant) throw UnknownPoint("expected a P(H,p,n) point");
    if (orderings(alpha.field).empty()) throw NonRealField(alpha.field.str());
    if (x.H == 0) {
        if (x.n == 1) return {1, -1, 0};
        return {2, -1, x.p};
    }
    if (x.n == 1) return {4, alpha.id, 0};
    if (x.p == 2) return {5, alpha.id, 0};
    return {6, alpha.id, x.p};
}

std::vector<std::pair<std::string, HomogeneousPrime>>
cellular_field_primes(const FieldDescriptor& F, const Truncation& t) {
    t.validate();
    std::vector<std::pair<std::string, HomogeneousPrime>> out;
    out.push_back({"P3", {3, -1, 0}});
    for (const auto& a : orderings(F)) {
        out.push_back({"P4:a=" + std::to_string(a.id), {4, a.id, 0}});
        out.push_back({"P5:a=" + std::to_string(a.id), {5, a.id, 0}});
        for (auto p : t.primes)
            if (p != 2)
                out.push_back({"P6:a=" + std::to_string(a.id) + ",p=" + std::to_string(p),
                               {6, a.id, p}});
    }
    out.push_back({"kerSing:HQ", {1, -1, 0}});
    for (auto p : t.primes)
        out.push_back({"kerSing:K(" + std::to_string(p) + ",n-1)", {2, -1, p}});
    return out;
}

HomogeneousPrime base_change(const HomogeneousPrime& closed_prime, const FieldDescriptor& target,
                             int beta) {
    auto ords = orderings(target);
    if (beta == -1) {
        // algebraic closure: only the nonreal shapes live upstairs
        if (closed_prime.tag > 3) throw InvalidClosure("ordering-type prime over F-bar");
        return closed_prime;
    }
    if (beta < 0 || beta >= (int)ords.size())
        throw InvalidClosure("no ordering with id " + std::to_string(beta) + " on " + target.str());
    HomogeneousPrime pr = closed_prime;
    switch (closed_prime.tag) {
        case 1:
        case 2:
        case 3:
            return pr;
        case 4:
        case 5:
            pr.alpha = beta;
            return pr;
        case 6:
            pr.alpha = beta;
            return pr;
    }
    throw Internal("bad prime tag");
}

CoverageReport coverage_report(const FieldDescriptor& F, const Truncation& t) {
    t.validate();
    CoverageReport rep{F, t, {}, 0, 0, 0};
    auto kmw = build_spec_h_kmw(F, t);
    auto gw = spec_gw(F, t.primes);
    auto ords = orderings(F);
    rep.spec_h_size = (std::int64_t)kmw.points.size();
    rep.spec_gw_size = (std::int64_t)gw.points.size();
    rep.orderings_count = (std::int64_t)ords.size();

    auto index_of = [&](const HomogeneousPrime& pr) {
        for (size_t i = 0; i < kmw.points.size(); ++i)
            if (kmw.points[i] == pr) return (int)i;
        return -1;
    };
    auto all_points = [&]() {
        std::set<int> s;
        for (size_t i = 0; i < kmw.points.size(); ++i) s.insert((int)i);
        return s;
    };
    auto compare = [&](CoverageCheck& c, const std::set<int>& got, const std::set<int>& want) {
        for (int i : want)
            if (!got.count(i)) {
                c.pass = false;
                c.defects.push_back("missing " + kmw.points[i].id());
            }
        for (int i : got)
            if (!want.count(i)) {
                c.pass = false;
                c.defects.push_back("extra " + kmw.points[i].id());
            }
    };

    // (i) topological Betti image is exactly the type (1) and (2) set
    {
        CoverageCheck c{"betti_shfin_image", true, true, {}};
        auto fin = build_spc_sh_fin(t);
        std::set<int> got;
        for (const auto& x : fin.points) got.insert(index_of(rho_bullet_sh_fin(x, F)));
        std::set<int> want;
        for (size_t i = 0; i < kmw.points.size(); ++i)
            if (kmw.points[i].tag <= 2) want.insert((int)i);
        compare(c, got, want);
        rep.checks.push_back(std::move(c));
    }

    // (ii) union of the equivariant images over all orderings misses exactly ([F^x],2)
    {
        CoverageCheck c{"betti_shc2_union", true, true, {}};
        if (ords.empty()) {
            c.applicable = false;
        } else {
            auto c2 = build_spc_sh_c2(t);
            std::set<int> got;
            for (const auto& a : ords)
                for (const auto& x : c2.points) got.insert(index_of(rho_bullet_sh_c2(x, a)));
            std::set<int> want = all_points();
            want.erase(index_of(HomogeneousPrime{3, -1, 0}));
            compare(c, got, want);
        }
        rep.checks.push_back(std::move(c));
    }

    // (iii) Betti images plus the cellular field primes cover everything
    {
        CoverageCheck c{"cellular_cover", true, true, {}};
        std::set<int> got;
        auto fin = build_spc_sh_fin(t);
        for (const auto& x : fin.points) got.insert(index_of(rho_bullet_sh_fin(x, F)));
        if (!ords.empty()) {
            auto c2 = build_spc_sh_c2(t);
            for (const auto& a : ords)
                for (const auto& x : c2.points) got.insert(index_of(rho_bullet_sh_c2(x, a)));
        }
        for (const auto& [lbl, pr] : cellular_field_primes(F, t)) got.insert(index_of(pr));
        compare(c, got, all_points());
        rep.checks.push_back(std::move(c));
    }

    // (iv) base change from the real and algebraic closures covers everything
    {
        CoverageCheck c{"base_change_cover", true, true, {}};
        std::set<int> got;
        auto cbar = FieldDescriptor::algebraically_closed(F.factor_bound);
        for (const auto& pr : build_spec_h_kmw(cbar, t).points)
            got.insert(index_of(base_change(pr, F, -1)));
        if (!ords.empty()) {
            auto rc = FieldDescriptor::real_closed(F.factor_bound);
            auto up = build_spec_h_kmw(rc, t);
            for (const auto& a : ords)
                for (const auto& pr : up.points) got.insert(index_of(base_change(pr, F, a.id)));
        }
        compare(c, got, all_points());
        rep.checks.push_back(std::move(c));
    }

    return rep;
}

std::vector<MWElement> generator_set(const HomogeneousPrime& pr, const FieldDescriptor& F) {
    validate_prime(pr, F);
    std::vector<MWElement> gens;
    auto sym = [&](const FieldElement& u) { return mw_symbol(u); };

    std::vector<FieldElement> units;
    switch (F.kind) {
        case FieldKind::FiniteField:
            units = {make_fq_element(F, F.tables->generator)};
            break;
        case FieldKind::Rationals:
            for (std::int64_t v : {-1, 2, 3, 5, 7}) units.push_back(element_from_int(F, v));
            break;
        case FieldKind::RealQuadratic:
            for (std::int64_t v : {-1, 2, 3, 5, 7}) units.push_back(element_from_int(F, v));
            units.push_back(make_element(F, Rat(0), Rat(1)));
            units.push_back(make_element(F, Rat(0), Rat(-1)));
            break;
        case FieldKind::RealClosed:
            units = {element_from_int(F, -1)};
            break;
        case FieldKind::AlgebraicallyClosed:
            units = {};
            break;
    }

    auto positives = [&](const Ordering& a) {
        std::vector<FieldElement> out;
        for (const auto& u : units)
            if (is_positive(u, a)) out.push_back(u);
        if (F.kind == FieldKind::RealClosed) out.push_back(element_from_int(F, 2));
        return out;
    };

    switch (pr.tag) {
        case 1:
            gens.push_back(mw_eta(F));
            for (const auto& u : units) gens.push_back(sym(u));
            break;
        case 2:
            gens.push_back(mw_eta(F));
            gens.push_back(mw_int(F, pr.p));
            for (const auto& u : units) gens.push_back(sym(u));
            break;
        case 3:
            gens.push_back(mw_int(F, 2));
            for (const auto& u : units) gens.push_back(sym(u));
            break;
        case 4: {
            Ordering a = orderings(F)[pr.alpha];
            gens.push_back(mw_h(F));
            for (const auto& u : positives(a)) gens.push_back(sym(u));
            break;
        }
        case 5: {
            Ordering a = orderings(F)[pr.alpha];
            gens.push_back(mw_eta(F));
            gens.push_back(mw_int(F, 2));
            for (const auto& u : positives(a)) gens.push_back(sym(u));
            break;
        }
        case 6: {
            Ordering a = orderings(F)[pr.alpha];
            gens.push_back(mw_h(F));
            gens.push_back(mw_int(F, pr.p));
            for (const auto& u : positives(a)) gens.push_back(sym(u));
            break;
        }
    }
    return gens;
}

HomogeneousPrime classify(const std::vector<MWElement>& generators, const FieldDescriptor& F,
                          const Truncation& t) {
    auto kmw = build_spec_h_kmw(F, t);
    std::vector<int> candidates;
    for (size_t i = 0; i < kmw.points.size(); ++i) {
        bool all = true;
        for (const auto& g : generators)
            if (!contains(kmw.points[i], g)) { all = false; break; }
        if (all) candidates.push_back((int)i);
    }
    if (candidates.empty())
        throw NotAThorntonPrime("no classified prime contains every generator");
    std::vector<int> minimal;
    for (int i : candidates) {
        bool is_min = true;
        for (int j : candidates)
            if (j != i && kmw.leq(j, i)) is_min = false;
        if (is_min) minimal.push_back(i);
    }
    if (minimal.size() != 1)
        throw NotAThorntonPrime("no unique minimal containing prime (" +
                                std::to_string(minimal.size()) + " candidates)");
    return kmw.points[minimal[0]];
}

} // namespace mwk
