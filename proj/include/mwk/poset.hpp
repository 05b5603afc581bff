#pragma once

#include "mwk/errors.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace mwk {

// Finite spectral space presented by its Hasse diagram. Closed sets are the
// up-sets; covers run (lower, upper). Point type P provides id(), label(),
// kind().
template <typename P>
struct SpectralPoset {
    std::vector<P> points;
    std::vector<std::pair<int, int>> covers;
    std::vector<std::vector<bool>> reach; // reach[i][j]: i <= j

    void finalize() {
        int n = (int)points.size();
        reach.assign(n, std::vector<bool>(n, false));
        for (int i = 0; i < n; ++i) reach[i][i] = true;
        for (auto& [lo, hi] : covers) {
            if (lo < 0 || hi < 0 || lo >= n || hi >= n || lo == hi)
                throw Internal("bad cover edge");
            reach[lo][hi] = true;
        }
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                if (reach[i][k])
                    for (int j = 0; j < n; ++j)
                        if (reach[k][j]) reach[i][j] = true;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && reach[i][j] && reach[j][i]) throw Internal("cover cycle");
        // Hasse property: no cover is implied by a longer chain
        for (auto& [lo, hi] : covers)
            for (int k = 0; k < n; ++k)
                if (k != lo && k != hi && reach[lo][k] && reach[k][hi])
                    throw Internal("cover " + points[lo].id() + " -> " + points[hi].id() +
                                   " is not a Hasse edge");
        std::sort(covers.begin(), covers.end());
    }

    bool leq(int i, int j) const { return reach[i][j]; }

    int index_of(const std::string& id) const {
        for (int i = 0; i < (int)points.size(); ++i)
            if (points[i].id() == id) return i;
        throw UnknownPoint(id);
    }

    std::set<int> closure(const std::set<int>& s) const {
        std::set<int> out;
        for (int i : s) {
            if (i < 0 || i >= (int)points.size()) throw UnknownPoint(std::to_string(i));
            for (int j = 0; j < (int)points.size(); ++j)
                if (reach[i][j]) out.insert(j);
        }
        return out;
    }

    std::set<int> minimal_points() const {
        std::set<int> out;
        for (int j = 0; j < (int)points.size(); ++j) {
            bool minimal = true;
            for (int i = 0; i < (int)points.size(); ++i)
                if (i != j && reach[i][j]) minimal = false;
            if (minimal) out.insert(j);
        }
        return out;
    }

    std::set<int> maximal_points() const {
        std::set<int> out;
        for (int i = 0; i < (int)points.size(); ++i) {
            bool maximal = true;
            for (int j = 0; j < (int)points.size(); ++j)
                if (i != j && reach[i][j]) maximal = false;
            if (maximal) out.insert(i);
        }
        return out;
    }
};

// Continuity for finite up-closed-closure spaces is order preservation along
// covers of the source.
template <typename S, typename T, typename MapFn>
bool is_continuous(const SpectralPoset<S>& src, const SpectralPoset<T>& dst, MapFn f) {
    for (auto& [lo, hi] : src.covers) {
        int a = f(lo), b = f(hi);
        if (a < 0 || b < 0 || a >= (int)dst.points.size() || b >= (int)dst.points.size())
            throw UnknownPoint("map leaves the target poset");
        if (!dst.leq(a, b)) return false;
    }
    return true;
}

template <typename P>
std::string export_dot(const SpectralPoset<P>& poset) {
    std::vector<std::string> nodes, edges;
    for (const auto& p : poset.points)
        nodes.push_back("  \"" + p.id() + "\" [label=\"" + p.label() + "\"];\n");
    for (auto& [lo, hi] : poset.covers)
        edges.push_back("  \"" + poset.points[lo].id() + "\" -> \"" + poset.points[hi].id() +
                        "\";\n");
    std::sort(nodes.begin(), nodes.end());
    std::sort(edges.begin(), edges.end());
    std::string out = "digraph spectral_poset {\n  rankdir=BT;\n  node [shape=box];\n";
    for (auto& s : nodes) out += s;
    for (auto& s : edges) out += s;
    out += "}\n";
    return out;
}

std::string json_escape(const std::string& s);

template <typename P>
std::string export_json(const SpectralPoset<P>& poset) {
    std::vector<int> order(poset.points.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return poset.points[a].id() < poset.points[b].id(); });
    std::vector<int> pos(order.size());
    for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = (int)i;

    std::string out = "{\"points\":[";
    for (size_t i = 0; i < order.size(); ++i) {
        const auto& p = poset.points[order[i]];
        if (i) out += ",";
        out += "{\"id\":\"" + json_escape(p.id()) + "\",\"label\":\"" + json_escape(p.label()) +
               "\",\"kind\":\"" + json_escape(p.kind()) + "\"}";
    }
    out += "],\"covers\":[";
    std::vector<std::pair<int, int>> es;
    for (auto& [lo, hi] : poset.covers) es.emplace_back(pos[lo], pos[hi]);
    std::sort(es.begin(), es.end());
    for (size_t i = 0; i < es.size(); ++i) {
        if (i) out += ",";
        out += "[" + std::to_string(es[i].first) + "," + std::to_string(es[i].second) + "]";
    }
    out += "]}";
    return out;
}

} // namespace mwk
