#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fqm/cyclo.hpp"
#include "fqm/dynamics.hpp"
#include "fqm/forms.hpp"
#include "fqm/linalg.hpp"
#include "fqm/perm.hpp"

namespace fqm::fixtures {

inline std::vector<std::string> group_names() {
    return {"S3",     "C3",     "SL23deg8", "A2roots", "A5ico",       "A5deg5",
            "A5deg6", "A5deg10", "cubeAut", "torus8",  "fullereneC60"};
}

inline std::vector<std::string> graph_names() {
    return {"tetrahedron", "cube", "dodecahedron", "icosahedron", "C60", "torus8"};
}

namespace detail {

inline int ico_opp(int p) { return (p + 6) % 12; }

inline std::vector<Permutation> c60_generators();
inline PermAction torus_group(int w);

} // namespace detail

inline PermAction group(const std::string& name) {
    if (name == "S3") return PermAction::from_cycles(3, {"(2,3)", "(1,3,2)"}, name);
    if (name == "C3") return PermAction::from_cycles(3, {"(1,2,3)"}, name);
    if (name == "SL23deg8") return PermAction::from_cycles(8, {"(1,5,3,2,6,4)(7,8)", "(1,3,7,2,4,8)(5,6)"}, name);
    if (name == "A2roots") return PermAction::from_cycles(6, {"(1,4)(2,3)(5,6)", "(1,3)(2,5)(4,6)"}, name);
    if (name == "A5ico")
        return PermAction::from_cycles(12, {"(2,3,4,5,6)(8,9,10,11,12)", "(1,2)(3,6)(4,10)(5,11)(7,8)(9,12)"}, name);
    if (name == "A5deg5") return PermAction::from_cycles(5, {"(1,2,3,4,5)", "(1,2,3)"}, name);
    if (name == "A5deg6") return PermAction::from_cycles(6, {"(2,3,4,5,6)", "(1,2)(3,6)"}, name);
    if (name == "A5deg10")
        return PermAction::from_cycles(10, {"(1,5,8,10,4)(2,6,9,3,7)", "(1,5,2)(3,6,8)(4,7,9)"}, name);
    if (name == "cubeAut") return PermAction::from_cycles(8, {"(2,3,5)(4,7,6)", "(2,3)(6,7)", "(1,2)(3,4)(5,6)(7,8)"}, name);
    if (name == "torus8") return detail::torus_group(8);
    if (name == "fullereneC60") return PermAction(60, detail::c60_generators(), name);
    throw UnknownFixture("unknown group fixture '" + name + "'");
}

inline Graph tetrahedron() {
    Graph g{4, {}, "tetrahedron"};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) g.edges.push_back({i, j});
    return g;
}

// Vertex v + 1 has bit pattern v; edges join patterns one bit apart.
inline Graph cube() {
    Graph g{8, {}, "cube"};
    for (int i = 0; i < 8; ++i)
        for (int b = 0; b < 3; ++b)
            if (int j = i ^ (1 << b); j > i) g.edges.push_back({i, j});
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

// 0 is the top, 1..5 the upper ring in cyclic order, vertex p is opposite to p + 6 mod 12.
inline Graph icosahedron() {
    std::set<std::pair<int, int>> e;
    auto add = [&](int a, int b) {
        e.insert({std::min(a, b), std::max(a, b)});
        int oa = detail::ico_opp(a), ob = detail::ico_opp(b);
        e.insert({std::min(oa, ob), std::max(oa, ob)});
    };
    auto u = [](int i) { return 1 + ((i % 5) + 5) % 5; };
    for (int i = 0; i < 5; ++i) {
        add(0, u(i));
        add(u(i), u(i + 1));
        add(u(i), detail::ico_opp(u(i + 2)));
        add(u(i), detail::ico_opp(u(i - 2)));
    }
    return Graph{12, {e.begin(), e.end()}, "icosahedron"};
}

inline std::vector<std::array<int, 3>> icosahedron_faces() {
    Graph g = icosahedron();
    std::vector<std::array<int, 3>> f;
    for (int a = 0; a < 12; ++a)
        for (int b = a + 1; b < 12; ++b)
            for (int c = b + 1; c < 12; ++c)
                if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) f.push_back({a, b, c});
    return f;
}

// Dual of the icosahedron: faces adjacent when they share an edge.
inline Graph dodecahedron() {
    auto f = icosahedron_faces();
    Graph g{static_cast<int>(f.size()), {}, "dodecahedron"};
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) {
            int shared = 0;
            for (int a : f[i])
                for (int b : f[j]) shared += a == b;
            if (shared == 2) g.edges.push_back({static_cast<int>(i), static_cast<int>(j)});
        }
    return g;
}

// Truncated icosahedron: vertices are directed icosahedron edges u->v in lexicographic order.
inline std::vector<std::pair<int, int>> c60_vertices() {
    std::vector<std::pair<int, int>> v;
    for (auto [a, b] : icosahedron().edges) {
        v.push_back({a, b});
        v.push_back({b, a});
    }
    std::sort(v.begin(), v.end());
    return v;
}

inline Graph c60() {
    auto v = c60_vertices();
    Graph ico = icosahedron();
    auto idx = [&](int a, int b) {
        return static_cast<int>(std::lower_bound(v.begin(), v.end(), std::make_pair(a, b)) - v.begin());
    };
    std::set<std::pair<int, int>> e;
    for (auto [a, b] : v) {
        int i = idx(a, b), j = idx(b, a);
        e.insert({std::min(i, j), std::max(i, j)});
        for (int c = 0; c < 12; ++c)
            if (c != b && ico.has_edge(a, c) && ico.has_edge(b, c)) {
                int k = idx(a, c);
                e.insert({std::min(i, k), std::max(i, k)});
            }
    }
    return Graph{60, {e.begin(), e.end()}, "C60"};
}

// Double bonds of C60 join u->v with v->u.
inline bool c60_double_bond(int i, int j) {
    auto v = c60_vertices();
    return v[i].first == v[j].second && v[i].second == v[j].first;
}

inline int torus_vertex(int r, int c, int w) { return ((r % w + w) % w) * w + ((c % w + w) % w); }

// Moore neighborhood on a w x w torus.
inline Graph torus(int w) {
    std::set<std::pair<int, int>> e;
    for (int r = 0; r < w; ++r)
        for (int c = 0; c < w; ++c)
            for (int dr = -1; dr <= 1; ++dr)
                for (int dc = -1; dc <= 1; ++dc) {
                    if (!dr && !dc) continue;
                    int a = torus_vertex(r, c, w), b = torus_vertex(r + dr, c + dc, w);
                    e.insert({std::min(a, b), std::max(a, b)});
                }
    return Graph{w * w, {e.begin(), e.end()}, "torus" + std::to_string(w)};
}

inline Graph graph(const std::string& name) {
    if (name == "tetrahedron") return tetrahedron();
    if (name == "cube") return cube();
    if (name == "dodecahedron") return dodecahedron();
    if (name == "icosahedron") return icosahedron();
    if (name == "C60") return c60();
    if (name == "torus8") return torus(8);
    throw UnknownFixture("unknown graph fixture '" + name + "'");
}

namespace detail {

inline std::vector<Permutation> c60_generators() {
    auto v = c60_vertices();
    auto idx = [&](int a, int b) {
        return static_cast<int>(std::lower_bound(v.begin(), v.end(), std::make_pair(a, b)) - v.begin());
    };
    std::vector<Permutation> ico = group("A5ico").generators();
    std::vector<int> opp(12);
    for (int p = 0; p < 12; ++p) opp[p] = ico_opp(p);
    ico.emplace_back(opp);
    std::vector<Permutation> out;
    for (const auto& g : ico) {
        std::vector<int> img(60);
        for (int i = 0; i < 60; ++i) img[i] = idx(g(v[i].first), g(v[i].second));
        out.emplace_back(img);
    }
    return out;
}

// Translations, quarter turn and mirror of the w x w torus.
inline PermAction torus_group(int w) {
    std::vector<int> right(w * w), down(w * w), rot(w * w), mir(w * w);
    for (int r = 0; r < w; ++r)
        for (int c = 0; c < w; ++c) {
            int v = torus_vertex(r, c, w);
            right[v] = torus_vertex(r, c + 1, w);
            down[v] = torus_vertex(r + 1, c, w);
            rot[v] = torus_vertex(c, w - 1 - r, w);
            mir[v] = torus_vertex(r, w - 1 - c, w);
        }
    return PermAction(w * w, {Permutation(right), Permutation(down), Permutation(rot), Permutation(mir)},
                      "torus" + std::to_string(w));
}

} // namespace detail

// Standard glider in the top-left corner of a w x w torus.
inline SystemState glider(int w = 8) {
    SystemState s(w * w, 0);
    for (auto [r, c] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}})
        s[torus_vertex(r, c, w)] = 1;
    return s;
}

struct CharacterTable {
    std::string group;
    std::vector<std::string> classes;
    std::vector<int> class_sizes;
    std::vector<std::string> irreps;
    std::vector<std::vector<Cyclotomic>> rows;

    std::vector<long> dimensions() const {
        std::vector<long> d;
        for (const auto& r : rows) d.push_back(r[0].rational_value().get_num().get_si());
        return d;
    }
};

// (1 + sqrt 5)/2 = 1 + z + z^4 with z a primitive fifth root.
inline Cyclotomic golden_ratio() {
    return Cyclotomic(1) + Cyclotomic::root(5, 1) + Cyclotomic::root(5, 4);
}

inline CharacterTable character_table(const std::string& name) {
    auto c = [](long v) { return Cyclotomic(v); };
    if (name == "S3")
        return {"S3", {"1", "(12)", "(123)"}, {1, 3, 2}, {"1", "1'", "2"},
                {{c(1), c(1), c(1)}, {c(1), c(-1), c(1)}, {c(2), c(0), c(-1)}}};
    if (name == "A5") {
        const Cyclotomic f = golden_ratio(), g = Cyclotomic(1) - golden_ratio();
        return {"A5",
                {"1", "(12)(34)", "(123)", "(12345)", "(13524)"},
                {1, 15, 20, 12, 12},
                {"1", "3", "3'", "4", "5"},
                {{c(1), c(1), c(1), c(1), c(1)},
                 {c(3), c(-1), c(0), f, g},
                 {c(3), c(-1), c(0), g, f},
                 {c(4), c(0), c(1), c(-1), c(-1)},
                 {c(5), c(1), c(-1), c(0), c(0)}}};
    }
    throw UnknownFixture("unknown character table '" + name + "'");
}

inline IntMatrix matrix_from_rows(const std::vector<std::string>& rows) {
    IntMatrix m = IntMatrix::Zero(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j] == '1';
    return m;
}

// Printed orbital matrices for the degree 8 SL(2,3) action.
inline std::vector<IntMatrix> sl23_printed_basis() {
    return {matrix_from_rows({"10000000", "01000000", "00100000", "00010000", "00001000", "00000100", "00000010",
                              "00000001"}),
            matrix_from_rows({"01000000", "10000000", "00010000", "00100000", "00000100", "00001000", "00000001",
                              "00000010"}),
            matrix_from_rows({"00101010", "00010101", "01000110", "10001001", "01100001", "10010010", "01011000",
                              "10100100"}),
            matrix_from_rows({"00010101", "00101010", "10001001", "01000110", "10010010", "01100001", "10100100",
                              "01011000"})};
}

// Printed orbital matrices for A2 on its six roots.
inline std::vector<IntMatrix> a2_printed_basis() {
    return {matrix_from_rows({"100000", "010000", "001000", "000100", "000010", "000001"}),
            matrix_from_rows({"010000", "000001", "000010", "001000", "000100", "100000"}),
            matrix_from_rows({"001000", "000100", "100000", "010000", "000001", "000010"}),
            matrix_from_rows({"000100", "000010", "000001", "100000", "010000", "001000"}),
            matrix_from_rows({"000010", "001000", "010000", "000001", "100000", "000100"}),
            matrix_from_rows({"000001", "100000", "000100", "000010", "001000", "010000"})};
}

// sqrt 3 = 2 z^2 - z^6 and sqrt 2 = z + z^3 - z^5 with z a primitive 24th root.
inline Cyclotomic sqrt3() { return Cyclotomic::root(24, 2).scaled(2) - Cyclotomic::root(24, 6); }
inline Cyclotomic sqrt2() {
    return Cyclotomic::root(24, 1) + Cyclotomic::root(24, 3) - Cyclotomic::root(24, 5);
}

// Transformation matrix decomposing the S3 permutation representation.
inline CMatrix s3_transformation() {
    const Cyclotomic s3 = sqrt3(), s2 = sqrt2(), s6 = s2 * s3;
    const Cyclotomic a = s3.scaled(Rat(1, 3)), b = s6.scaled(Rat(1, 3)), c = s6.scaled(Rat(-1, 6)),
                     d = s2.scaled(Rat(1, 2)), z;
    return {{a, b, z}, {a, c, -d}, {a, c, d}};
}

inline CMatrix tribimaximal() {
    const Cyclotomic s3 = sqrt3(), s2 = sqrt2(), s6 = s2 * s3;
    const Cyclotomic a = s3.scaled(Rat(1, 3)), b = s6.scaled(Rat(1, 3)), c = s6.scaled(Rat(-1, 6)),
                     d = s2.scaled(Rat(1, 2)), z;
    return {{b, a, z}, {c, a, -d}, {c, a, d}};
}

inline std::vector<std::vector<Rat>> tribimaximal_squares() {
    return {{Rat(2, 3), Rat(1, 3), Rat(0)}, {Rat(1, 6), Rat(1, 3), Rat(1, 2)}, {Rat(1, 6), Rat(1, 3), Rat(1, 2)}};
}

inline std::vector<std::vector<Rat>> squared_moduli(const CMatrix& m) {
    std::vector<std::vector<Rat>> out;
    for (const auto& row : m) {
        std::vector<Rat> r;
        for (const auto& x : row) {
            Cyclotomic a = abs2(x);
            if (!a.is_rational()) throw NotInRing("squared modulus is not rational");
            r.push_back(a.rational_value());
        }
        out.push_back(r);
    }
    return out;
}

inline CMatrix swap_columns(CMatrix m, std::size_t i, std::size_t j) {
    for (auto& row : m) std::swap(row[i], row[j]);
    return m;
}

// Local transition scheme of C60 at vertex 0: index 0 is the stay-put edge, then neighbors in order.
struct LocalModel {
    int vertex = 0;
    std::vector<int> neighbors;
    std::vector<std::vector<int>> orbits;  // over scheme indices
    std::size_t stabilizer_order = 0;
    std::size_t group_order = 0;
};

inline LocalModel fullerene_model(int vertex = 0) {
    Graph g = c60();
    PermAction a = group("fullereneC60");
    LocalModel m;
    m.vertex = vertex;
    m.neighbors = g.adjacency()[vertex];
    // Double bond last, pentagon edges first.
    std::stable_partition(m.neighbors.begin(), m.neighbors.end(),
                          [&](int u) { return !c60_double_bond(vertex, u); });
    m.group_order = a.closure().size();
    auto stab = stabilizer(a, vertex);
    m.stabilizer_order = stab.closure().size();
    std::vector<int> scheme{vertex};
    scheme.insert(scheme.end(), m.neighbors.begin(), m.neighbors.end());
    std::vector<char> seen(scheme.size(), 0);
    for (std::size_t i = 0; i < scheme.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> orb;
        for (const auto& h : stab.closure()) {
            int img = h(scheme[i]);
            auto k = static_cast<std::size_t>(std::find(scheme.begin(), scheme.end(), img) - scheme.begin());
            if (!seen[k]) {
                seen[k] = 1;
                orb.push_back(static_cast<int>(k));
            }
        }
        std::sort(orb.begin(), orb.end());
        m.orbits.push_back(orb);
    }
    return m;
}

} // namespace fqm::fixtures
