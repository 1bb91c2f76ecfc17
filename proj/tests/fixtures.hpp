#pragma once

#include <memory>
#include <set>
#include <random>

#include "gbpd/complex.hpp"
#include "gbpd/field.hpp"

namespace fixtures {

using namespace gbpd;

inline Space binary_space(int n) {
    Space s;
    for (int i = 0; i < n; ++i) {
        s.vars.push_back(i);
        s.cards.push_back(2);
    }
    return s;
}

// cone with top: full power set of {0,1}
inline Complex c1_cone() {
    return Complex(build({Region{0, 1}, Region{0}, Region{1}}, true, true),
                   binary_space(2));
}

// chain 0-1-2, the smallest retractable fixture with two maximal members
inline Complex t1_chain(bool with_empty = false) {
    return Complex(build({Region{0, 1}, Region{1, 2}}, true, with_empty), binary_space(3));
}

// loopy triangle: three edges, their vertices and ∅
inline Complex triangle() {
    return Complex(build({Region{0, 1}, Region{1, 2}, Region{0, 2}}, true, true),
                   binary_space(3));
}

// random ∩-closed covering of five binary variables
inline Complex random_closed5(unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, 4);
    std::set<Region> pool{Region{0, 1, 2}};
    while (pool.size() < 5) {
        std::vector<Var> vars;
        int len = 2 + static_cast<int>(rng() % 2);
        while (static_cast<int>(vars.size()) < len) {
            Var v = pick(rng);
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
        }
        pool.insert(Region(vars));
    }
    return Complex(build({pool.begin(), pool.end()}, true, true), binary_space(5));
}

// covering of a 7-vertex random tree by its edges (∩-closure adds vertices, ∅)
inline Complex tree7(unsigned seed) {
    std::mt19937_64 rng(seed);
    std::vector<Region> edges;
    for (int v = 1; v < 7; ++v) {
        int parent = static_cast<int>(rng() % static_cast<unsigned>(v));
        edges.push_back(Region{parent, v});
    }
    return Complex(build(edges, true, true), binary_space(7));
}

} // namespace fixtures
