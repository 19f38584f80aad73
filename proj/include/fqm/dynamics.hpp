#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fqm/cyclo.hpp"
#include "fqm/perm.hpp"

namespace fqm {

struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::string name;

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(n);
        for (auto [a, b] : edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        for (auto& v : adj) std::sort(v.begin(), v.end());
        return adj;
    }
    bool has_edge(int a, int b) const {
        return std::any_of(edges.begin(), edges.end(), [&](auto e) {
            return (e.first == a && e.second == b) || (e.first == b && e.second == a);
        });
    }
    std::optional<int> regular_degree() const {
        auto adj = adjacency();
        for (const auto& v : adj)
            if (v.size() != adj[0].size()) return std::nullopt;
        return n ? static_cast<int>(adj[0].size()) : 0;
    }
    bool is_automorphism(const Permutation& p) const {
        std::set<std::pair<int, int>> e;
        for (auto [a, b] : edges) e.insert({std::min(a, b), std::max(a, b)});
        for (auto [a, b] : edges) {
            int x = p(a), y = p(b);
            if (!e.count({std::min(x, y), std::max(x, y)})) return false;
        }
        return true;
    }
};

// Backtracking automorphism enumeration, intended for graphs of at most a dozen vertices.
inline std::vector<Permutation> graph_automorphisms(const Graph& g) {
    if (g.n > 12) throw ScaleExceeded("brute-force automorphisms limited to 12 vertices");
    std::vector<std::vector<char>> adj(g.n, std::vector<char>(g.n, 0));
    for (auto [a, b] : g.edges) adj[a][b] = adj[b][a] = 1;
    std::vector<Permutation> out;
    std::vector<int> img(g.n, -1);
    std::vector<char> used(g.n, 0);
    std::function<void(int)> rec = [&](int v) {
        if (v == g.n) {
            out.emplace_back(img);
            return;
        }
        for (int w = 0; w < g.n; ++w) {
            if (used[w]) continue;
            bool ok = true;
            for (int u = 0; u < v && ok; ++u) ok = adj[u][v] == adj[img[u]][w];
            if (!ok) continue;
            img[v] = w;
            used[w] = 1;
            rec(v + 1);
            used[w] = 0;
        }
    };
    rec(0);
    return out;
}

// States are q-ary digit vectors; code has vertex 0 most significant.
using SystemState = std::vector<int>;

inline std::uint64_t encode_state(const SystemState& s, int q) {
    std::uint64_t c = 0;
    for (int v : s) c = c * q + v;
    return c;
}
inline SystemState decode_state(std::uint64_t c, int n, int q) {
    SystemState s(n);
    for (int i = n - 1; i >= 0; --i) {
        s[i] = static_cast<int>(c % q);
        c /= q;
    }
    return s;
}

// (sigma g)(x) = sigma(x g^-1).
inline SystemState act(const SystemState& s, const Permutation& g) {
    if (g.degree() != static_cast<int>(s.size())) throw DegreeMismatch("permutation degree differs from state size");
    SystemState r(s.size());
    for (int x = 0; x < g.degree(); ++x) r[g(x)] = s[x];
    return r;
}

struct WreathElement {
    std::vector<Permutation> alpha; // local permutation of Sigma per vertex
    Permutation a;                  // space permutation
};

inline WreathElement wreath_identity(int n, int q) {
    return {std::vector<Permutation>(n, Permutation(q)), Permutation(n)};
}

inline void check_wreath(const SystemState& s, const WreathElement& u) {
    if (u.a.degree() != static_cast<int>(s.size()) || u.alpha.size() != s.size())
        throw DegreeMismatch("wreath element degree differs from state size");
}

// sigma'(x) = sigma(x a^-1) alpha(x a^-1)
inline SystemState wreath_act(const SystemState& s, const WreathElement& u) {
    check_wreath(s, u);
    const Permutation ai = u.a.inverse();
    SystemState r(s.size());
    for (int x = 0; x < u.a.degree(); ++x) {
        int y = ai(x);
        r[x] = u.alpha[y](s[y]);
    }
    return r;
}

// (alpha, a)(beta, b) = (alpha(x) beta(x a), a b)
inline WreathElement wreath_mul(const WreathElement& u, const WreathElement& v) {
    WreathElement w{std::vector<Permutation>(u.alpha.size()), u.a * v.a};
    for (int x = 0; x < u.a.degree(); ++x) w.alpha[x] = u.alpha[x] * v.alpha[u.a(x)];
    return w;
}

// (alpha, a)^-1 = (alpha(x a^-1)^-1, a^-1)
inline WreathElement wreath_inv(const WreathElement& u) {
    const Permutation ai = u.a.inverse();
    WreathElement w{std::vector<Permutation>(u.alpha.size()), ai};
    for (int x = 0; x < u.a.degree(); ++x) w.alpha[x] = u.alpha[ai(x)].inverse();
    return w;
}

using SpaceMap = std::function<Permutation(const Permutation&)>;

inline void check_antihomomorphism(const std::vector<Permutation>& group, const SpaceMap& mu) {
    for (const auto& a : group)
        for (const auto& b : group)
            if (mu(a * b) != mu(b) * mu(a)) throw NotAntihomomorphism("mu(ab) != mu(b) mu(a)");
}

// sigma'(x) = sigma(x mu(a)) alpha(x kappa(a))
inline SystemState split_extension_act(const SystemState& s, const WreathElement& u, const SpaceMap& mu,
                                       const SpaceMap& kappa) {
    check_wreath(s, u);
    const Permutation m = mu(u.a), k = kappa(u.a);
    SystemState r(s.size());
    for (int x = 0; x < u.a.degree(); ++x) r[x] = u.alpha[k(x)](s[m(x)]);
    return r;
}

// (alpha(x kappa(ab)^-1 mu(b) kappa(a)) beta(x kappa(ab)^-1 kappa(b)), ab)
inline WreathElement split_extension_mul(const WreathElement& u, const WreathElement& v, const SpaceMap& mu,
                                         const SpaceMap& kappa) {
    const Permutation ab = u.a * v.a;
    const Permutation kabi = kappa(ab).inverse();
    const Permutation left = kabi * mu(v.a) * kappa(u.a);
    const Permutation right = kabi * kappa(v.a);
    WreathElement w{std::vector<Permutation>(u.alpha.size()), ab};
    for (int x = 0; x < ab.degree(); ++x) w.alpha[x] = u.alpha[left(x)] * v.alpha[right(x)];
    return w;
}

// (alpha(x kappa(a^-1)^-1 mu(a)^-1 kappa(a))^-1, a^-1)
inline WreathElement split_extension_inv(const WreathElement& u, const SpaceMap& mu, const SpaceMap& kappa) {
    const Permutation ai = u.a.inverse();
    const Permutation t = kappa(ai).inverse() * mu(u.a).inverse() * kappa(u.a);
    WreathElement w{std::vector<Permutation>(u.alpha.size()), ai};
    for (int x = 0; x < ai.degree(); ++x) w.alpha[x] = u.alpha[t(x)].inverse();
    return w;
}

struct OrbitPartition {
    int n = 0, q = 2;
    std::vector<int> orbit_of;                // per state code
    std::vector<std::vector<std::uint64_t>> orbits;
    std::map<std::size_t, int> census;        // orbit size -> count
};

inline constexpr std::uint64_t kStateCap = std::uint64_t(1) << 24;

inline std::uint64_t state_space(int n, int q) {
    std::uint64_t s = 1;
    for (int i = 0; i < n; ++i) {
        s *= q;
        if (s > kStateCap) throw ScaleExceeded("state space exceeds 2^24");
    }
    return s;
}

inline OrbitPartition orbit_partition(int n, const std::vector<Permutation>& gens, int q) {
    OrbitPartition p;
    p.n = n;
    p.q = q;
    const std::uint64_t S = state_space(n, q);
    p.orbit_of.assign(S, -1);
    for (std::uint64_t c = 0; c < S; ++c) {
        if (p.orbit_of[c] >= 0) continue;
        int id = static_cast<int>(p.orbits.size());
        std::vector<std::uint64_t> orb{c};
        p.orbit_of[c] = id;
        for (std::size_t k = 0; k < orb.size(); ++k) {
            SystemState s = decode_state(orb[k], n, q);
            for (const auto& g : gens) {
                std::uint64_t d = encode_state(act(s, g), q);
                if (p.orbit_of[d] < 0) {
                    p.orbit_of[d] = id;
                    orb.push_back(d);
                }
            }
        }
        std::sort(orb.begin(), orb.end());
        ++p.census[orb.size()];
        p.orbits.push_back(std::move(orb));
    }
    return p;
}

// Outer-totalistic rule: a dead cell is born with a neighbor count in B, a live one survives with a count in S.
struct SymmetricRule {
    std::set<int> birth, survive;

    static SymmetricRule parse(const std::string& text) {
        SymmetricRule r;
        auto slash = text.find('/');
        if (text.empty() || text[0] != 'B' || slash == std::string::npos || slash + 1 >= text.size() ||
            text[slash + 1] != 'S')
            throw ParseError("rule must look like B3/S23");
        for (std::size_t i = 1; i < slash; ++i) r.birth.insert(text[i] - '0');
        for (std::size_t i = slash + 2; i < text.size(); ++i) r.survive.insert(text[i] - '0');
        return r;
    }
    std::string to_string() const {
        std::string s = "B";
        for (int b : birth) s += std::to_string(b);
        s += "/S";
        for (int v : survive) s += std::to_string(v);
        return s;
    }
};

inline SystemState evolve(const SystemState& s, const SymmetricRule& rule, const Graph& g) {
    if (!g.regular_degree()) throw NotRegular("symmetric rules need a regular graph");
    auto adj = g.adjacency();
    SystemState r(s.size());
    for (int x = 0; x < g.n; ++x) {
        int c = 0;
        for (int y : adj[x]) c += s[y];
        r[x] = s[x] ? rule.survive.count(c) > 0 : rule.birth.count(c) > 0;
    }
    return r;
}

struct PhasePortrait {
    std::vector<std::size_t> orbit_size;
    std::vector<int> next;                 // quotient map on orbits
    std::vector<std::vector<int>> cycles;  // orbit ids along each cycle
    std::vector<int> basin_of;             // cycle index per orbit
    std::vector<Rat> weights;              // state fraction per basin
    std::uint64_t states = 0;
};

inline PhasePortrait phase_portrait(const Graph& g, const SymmetricRule& rule, const std::vector<Permutation>& gens,
                                    int q = 2) {
    auto part = orbit_partition(g.n, gens, q);
    PhasePortrait pp;
    pp.states = part.orbit_of.size();
    for (const auto& o : part.orbits) pp.orbit_size.push_back(o.size());
    // Equivariance on every state and generator.
    for (std::uint64_t c = 0; c < pp.states; ++c) {
        SystemState s = decode_state(c, g.n, q);
        SystemState fs = evolve(s, rule, g);
        for (const auto& h : gens)
            if (evolve(act(s, h), rule, g) != act(fs, h)) throw NotEquivariant("rule does not commute with the group");
    }
    const int K = static_cast<int>(part.orbits.size());
    pp.next.resize(K);
    for (int k = 0; k < K; ++k)
        pp.next[k] = part.orbit_of[encode_state(evolve(decode_state(part.orbits[k][0], g.n, q), rule, g), q)];
    pp.basin_of.assign(K, -1);
    std::vector<int> mark(K, -1);
    for (int k = 0; k < K; ++k) {
        if (pp.basin_of[k] >= 0) continue;
        std::vector<int> path;
        int x = k;
        while (pp.basin_of[x] < 0 && mark[x] != k) {
            mark[x] = k;
            path.push_back(x);
            x = pp.next[x];
        }
        int cyc;
        if (pp.basin_of[x] >= 0) {
            cyc = pp.basin_of[x];
        } else {
            cyc = static_cast<int>(pp.cycles.size());
            std::vector<int> c{x};
            for (int y = pp.next[x]; y != x; y = pp.next[y]) c.push_back(y);
            pp.cycles.push_back(c);
        }
        for (int y : path) pp.basin_of[y] = cyc;
    }
    pp.weights.assign(pp.cycles.size(), Rat(0));
    for (int k = 0; k < K; ++k) pp.weights[pp.basin_of[k]] += Rat(pp.orbit_size[k], pp.states);
    for (auto& w : pp.weights) w.canonicalize();
    return pp;
}

// Group element g with s1 = s0 g, if any.
inline std::optional<Permutation> find_witness(const SystemState& s0, const SystemState& s1,
                                               const std::vector<Permutation>& elements) {
    for (const auto& g : elements)
        if (act(s0, g) == s1) return g;
    return std::nullopt;
}

struct SolitonWitness {
    int t0 = 0, t1 = 0;
    Permutation g;
};

// First pair t0 < t1 (by t1, then t0) whose states lie on one orbit.
inline std::optional<SolitonWitness> soliton_witness(const std::vector<SystemState>& traj,
                                                     const std::vector<Permutation>& elements) {
    for (std::size_t t1 = 1; t1 < traj.size(); ++t1)
        for (std::size_t t0 = 0; t0 < t1; ++t0)
            if (auto g = find_witness(traj[t0], traj[t1], elements))
                return SolitonWitness{static_cast<int>(t0), static_cast<int>(t1), *g};
    return std::nullopt;
}

// Minimum code over the group images, a canonical orbit label for large state spaces.
inline std::vector<int> canonical_form(const SystemState& s, const std::vector<Permutation>& elements) {
    SystemState best = s;
    for (const auto& g : elements) best = std::min(best, act(s, g));
    return best;
}

// Internal-group-valued edge labels with P(j,i) = P(i,j)^-1.
class Connection {
public:
    Connection(const Graph& g, int internal_degree)
        : graph_(g), m_(internal_degree) {}

    void set(int i, int j, const Permutation& p) {
        if (!graph_.has_edge(i, j)) throw BadPath("no edge between the given vertices");
        value_[{i, j}] = p;
        value_[{j, i}] = p.inverse();
    }
    Permutation get(int i, int j) const {
        auto it = value_.find({i, j});
        if (it == value_.end()) {
            if (!graph_.has_edge(i, j)) throw BadPath("no edge between the given vertices");
            return Permutation(m_);
        }
        return it->second;
    }
    const Graph& graph() const { return graph_; }
    int internal_degree() const { return m_; }

private:
    Graph graph_;
    int m_;
    std::map<std::pair<int, int>, Permutation> value_;
};

inline Permutation parallel_transport(const Connection& c, const std::vector<int>& path) {
    Permutation p(c.internal_degree());
    for (std::size_t k = 0; k + 1 < path.size(); ++k) p = p * c.get(path[k], path[k + 1]);
    return p;
}

inline Permutation holonomy(const Connection& c, const std::vector<int>& cycle) {
    if (cycle.size() < 2 || cycle.front() != cycle.back()) throw BadPath("holonomy needs a closed path");
    return parallel_transport(c, cycle);
}

// P(x_i, x_j) -> gamma(x_i)^-1 P gamma(x_j)
inline Connection gauge_transform(const Connection& c, const std::vector<Permutation>& gamma) {
    Connection r(c.graph(), c.internal_degree());
    for (auto [i, j] : c.graph().edges) r.set(i, j, gamma[i].inverse() * c.get(i, j) * gamma[j]);
    return r;
}

// P(x_i, x_j) = alpha(x_i) alpha(x_j)^-1
inline Connection trivial_connection(const Graph& g, const std::vector<Permutation>& alpha) {
    Connection r(g, alpha.empty() ? 1 : alpha[0].degree());
    for (auto [i, j] : g.edges) r.set(i, j, alpha[i] * alpha[j].inverse());
    return r;
}

// Spanning-tree gauge fixing: alpha(root) = id, alpha(j) = P(i,j)^-1 alpha(i), then check the chords.
inline std::optional<std::vector<Permutation>> is_trivial_connection(const Connection& c) {
    const Graph& g = c.graph();
    auto adj = g.adjacency();
    std::vector<std::optional<Permutation>> alpha(g.n);
    alpha[0] = Permutation(c.internal_degree());
    std::vector<int> queue{0};
    for (std::size_t k = 0; k < queue.size(); ++k) {
        int i = queue[k];
        for (int j : adj[i])
            if (!alpha[j]) {
                alpha[j] = c.get(i, j).inverse() * *alpha[i];
                queue.push_back(j);
            }
    }
    std::vector<Permutation> out;
    for (const auto& a : alpha) {
        if (!a) return std::nullopt;
        out.push_back(*a);
    }
    for (auto [i, j] : g.edges)
        if (c.get(i, j) != out[i] * out[j].inverse()) return std::nullopt;
    return out;
}

} // namespace fqm
