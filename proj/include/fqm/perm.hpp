#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fqm/errors.hpp"

namespace fqm {

// Right action: i^(p*q) = (i^p)^q.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(int degree) : img_(degree) { std::iota(img_.begin(), img_.end(), 0); }
    explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
        std::vector<char> seen(img_.size(), 0);
        for (int v : img_) {
            if (v < 0 || v >= degree() || seen[v]) throw OutOfRange("images do not form a permutation");
            seen[v] = 1;
        }
    }

    int degree() const { return static_cast<int>(img_.size()); }
    int operator()(int i) const { return img_[i]; }
    const std::vector<int>& images() const { return img_; }

    friend Permutation operator*(const Permutation& p, const Permutation& q) {
        if (p.degree() != q.degree()) throw DegreeMismatch("permutation degrees differ");
        Permutation r;
        r.img_.resize(p.img_.size());
        for (std::size_t i = 0; i < p.img_.size(); ++i) r.img_[i] = q.img_[p.img_[i]];
        return r;
    }
    Permutation inverse() const {
        Permutation r;
        r.img_.resize(img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<int>(i);
        return r;
    }
    bool is_identity() const {
        for (std::size_t i = 0; i < img_.size(); ++i)
            if (img_[i] != static_cast<int>(i)) return false;
        return true;
    }
    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.img_ <=> b.img_; }

    std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        std::vector<char> seen(img_.size(), 0);
        for (int i = 0; i < degree(); ++i) {
            if (seen[i]) continue;
            std::vector<int> c;
            for (int j = i; !seen[j]; j = img_[j]) {
                seen[j] = 1;
                c.push_back(j);
            }
            out.push_back(std::move(c));
        }
        return out;
    }

    long order() const {
        long o = 1;
        for (const auto& c : cycles()) o = std::lcm(o, static_cast<long>(c.size()));
        return o;
    }

    // 1-based cycle notation, fixed points omitted.
    std::string to_string() const {
        std::string s;
        for (const auto& c : cycles()) {
            if (c.size() < 2) continue;
            s += "(";
            for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "," : "") + std::to_string(c[k] + 1);
            s += ")";
        }
        return s.empty() ? "()" : s;
    }

private:
    std::vector<int> img_;
};

struct PermHash {
    std::size_t operator()(const Permutation& p) const {
        std::size_t h = 1469598103934665603ULL;
        for (int v : p.images()) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
        return h;
    }
};

namespace detail {

inline std::vector<int> parse_int_list(std::string_view s) {
    std::vector<int> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (std::isspace((unsigned char)s[i]) || s[i] == ',')) ++i;
        if (i == s.size()) break;
        if (!std::isdigit((unsigned char)s[i])) throw ParseError("unexpected character in '" + std::string(s) + "'");
        int v = 0;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) v = v * 10 + (s[i++] - '0');
        out.push_back(v);
    }
    return out;
}

} // namespace detail

// Accepts cycle notation "(1,2,3)(4,5)", "()" or a 1-based image list "[2,3,1]".
inline Permutation parse_permutation(std::string_view text, int degree) {
    std::string_view t = text;
    while (!t.empty() && std::isspace((unsigned char)t.front())) t.remove_prefix(1);
    while (!t.empty() && std::isspace((unsigned char)t.back())) t.remove_suffix(1);
    std::vector<int> img(degree);
    std::iota(img.begin(), img.end(), 0);
    if (t.empty()) throw ParseError("empty permutation text");
    if (t.front() == '[') {
        if (t.back() != ']') throw ParseError("unterminated image list");
        auto v = detail::parse_int_list(t.substr(1, t.size() - 2));
        if (static_cast<int>(v.size()) != degree) throw ParseError("image list length differs from degree");
        for (int i = 0; i < degree; ++i) {
            if (v[i] < 1 || v[i] > degree) throw OutOfRange("image out of range");
            img[i] = v[i] - 1;
        }
        return Permutation(img);
    }
    std::vector<char> used(degree, 0);
    std::size_t i = 0;
    Permutation result(degree);
    while (i < t.size()) {
        if (std::isspace((unsigned char)t[i])) {
            ++i;
            continue;
        }
        if (t[i] != '(') throw ParseError("expected '(' in '" + std::string(text) + "'");
        auto close = t.find(')', i);
        if (close == std::string_view::npos) throw ParseError("unterminated cycle");
        auto c = detail::parse_int_list(t.substr(i + 1, close - i - 1));
        std::vector<int> cyc(degree);
        std::iota(cyc.begin(), cyc.end(), 0);
        std::set<int> inthis;
        for (int v : c) {
            if (v < 1 || v > degree) throw OutOfRange("cycle entry " + std::to_string(v) + " out of range");
            if (!inthis.insert(v).second) throw ParseError("repeated entry in cycle");
        }
        for (std::size_t k = 0; k < c.size(); ++k) cyc[c[k] - 1] = c[(k + 1) % c.size()] - 1;
        result = result * Permutation(cyc);
        i = close + 1;
    }
    return result;
}

class PermAction {
public:
    PermAction() = default;
    PermAction(int degree, std::vector<Permutation> gens, std::string name = {})
        : degree_(degree), gens_(std::move(gens)), name_(std::move(name)),
          cache_(std::make_shared<Cache>()) {
        if (gens_.empty()) gens_.push_back(Permutation(degree));
        for (const auto& g : gens_)
            if (g.degree() != degree_) throw DegreeMismatch("generator degree differs from action degree");
    }

    static PermAction from_cycles(int degree, const std::vector<std::string>& gens, std::string name = {}) {
        std::vector<Permutation> g;
        for (const auto& s : gens) g.push_back(parse_permutation(s, degree));
        return PermAction(degree, std::move(g), std::move(name));
    }

    int degree() const { return degree_; }
    const std::vector<Permutation>& generators() const { return gens_; }
    const std::string& name() const { return name_; }

    // Breadth-first enumeration of the generated group, cached on first success.
    const std::vector<Permutation>& closure(std::size_t cap = 1000000) const {
        std::lock_guard<std::mutex> lock(cache_->mu);
        if (cache_->elements) return *cache_->elements;
        std::vector<Permutation> elems{Permutation(degree_)};
        std::unordered_set<Permutation, PermHash> seen{elems[0]};
        for (std::size_t k = 0; k < elems.size(); ++k) {
            for (const auto& g : gens_) {
                Permutation h = elems[k] * g;
                if (seen.insert(h).second) {
                    if (elems.size() >= cap) throw CapExceeded("group order exceeds closure cap");
                    elems.push_back(std::move(h));
                }
            }
        }
        cache_->elements = std::make_shared<const std::vector<Permutation>>(std::move(elems));
        return *cache_->elements;
    }

private:
    struct Cache {
        std::mutex mu;
        std::shared_ptr<const std::vector<Permutation>> elements;
    };
    int degree_ = 0;
    std::vector<Permutation> gens_;
    std::string name_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

inline std::size_t group_order(const PermAction& a) { return a.closure().size(); }

inline long group_exponent(const PermAction& a) {
    long e = 1;
    for (const auto& g : a.closure()) e = std::lcm(e, g.order());
    return e;
}

namespace detail {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        p[b] = a;
        return true;
    }
};

inline std::vector<std::vector<int>> classes(UnionFind& uf, int n) {
    std::map<int, std::vector<int>> m;
    for (int i = 0; i < n; ++i) m[uf.find(i)].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& [k, v] : m) out.push_back(std::move(v));
    return out;
}

} // namespace detail

// Orbit partition, each orbit sorted, ordered by smallest point.
inline std::vector<std::vector<int>> orbits(const PermAction& a, std::optional<std::vector<int>> seeds = std::nullopt) {
    detail::UnionFind uf(a.degree());
    for (const auto& g : a.generators())
        for (int i = 0; i < a.degree(); ++i) uf.unite(i, g(i));
    auto all = detail::classes(uf, a.degree());
    if (!seeds) return all;
    std::vector<std::vector<int>> out;
    for (auto& o : all)
        for (int s : *seeds)
            if (std::binary_search(o.begin(), o.end(), s)) {
                out.push_back(o);
                break;
            }
    return out;
}

inline bool is_transitive(const PermAction& a) { return orbits(a).size() == 1; }

// Finest block system containing {0, j}.
inline std::vector<std::vector<int>> finest_block_system(const PermAction& a, int j) {
    detail::UnionFind uf(a.degree());
    std::vector<std::pair<int, int>> queue;
    if (uf.unite(0, j)) queue.emplace_back(0, j);
    for (std::size_t k = 0; k < queue.size(); ++k) {
        auto [x, y] = queue[k];
        for (const auto& g : a.generators()) {
            int gx = g(x), gy = g(y);
            if (uf.unite(gx, gy)) queue.emplace_back(gx, gy);
        }
    }
    return detail::classes(uf, a.degree());
}

// Minimal nontrivial block system (smallest blocks), or nullopt when primitive.
inline std::optional<std::vector<std::vector<int>>> blocks(const PermAction& a) {
    if (!is_transitive(a)) throw NotTransitive("block systems need a transitive action");
    std::optional<std::vector<std::vector<int>>> best;
    for (int j = 1; j < a.degree(); ++j) {
        auto sys = finest_block_system(a, j);
        if (sys.size() == 1) continue;
        if (!best || sys[0].size() < (*best)[0].size()) best = std::move(sys);
    }
    return best;
}

struct Orbital {
    int index = 0;
    int degree = 0;
    std::vector<std::pair<int, int>> pairs; // sorted
};

// Orbitals in lexicographic first-seen order.
inline std::vector<Orbital> orbitals(const PermAction& a) {
    const int n = a.degree();
    std::vector<int> label(static_cast<std::size_t>(n) * n, -1);
    std::vector<Orbital> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (label[i * n + j] >= 0) continue;
            Orbital o;
            o.index = static_cast<int>(out.size());
            o.degree = n;
            std::vector<std::pair<int, int>> stack{{i, j}};
            label[i * n + j] = o.index;
            while (!stack.empty()) {
                auto [x, y] = stack.back();
                stack.pop_back();
                o.pairs.emplace_back(x, y);
                for (const auto& g : a.generators()) {
                    int gx = g(x), gy = g(y);
                    if (label[gx * n + gy] < 0) {
                        label[gx * n + gy] = o.index;
                        stack.emplace_back(gx, gy);
                    }
                }
            }
            std::sort(o.pairs.begin(), o.pairs.end());
            out.push_back(std::move(o));
        }
    return out;
}

// N x N matrix of orbital indices.
inline std::vector<std::vector<int>> orbital_labels(const std::vector<Orbital>& orbs) {
    const int n = orbs.empty() ? 0 : orbs[0].degree;
    std::vector<std::vector<int>> m(n, std::vector<int>(n, -1));
    for (const auto& o : orbs)
        for (auto [i, j] : o.pairs) m[i][j] = o.index;
    return m;
}

inline PermAction stabilizer(const PermAction& a, int point, std::size_t cap = 1000000) {
    std::vector<Permutation> fix;
    for (const auto& g : a.closure(cap))
        if (g(point) == point) fix.push_back(g);
    return PermAction(a.degree(), std::move(fix), a.name() + "_stab" + std::to_string(point + 1));
}

inline std::map<int, int> cycle_type(const Permutation& p) {
    std::map<int, int> t;
    for (const auto& c : p.cycles()) ++t[static_cast<int>(c.size())];
    return t;
}

// (i, k_i) meaning (lambda^i - 1)^k_i.
inline std::vector<std::pair<int, int>> char_poly_factored(const Permutation& p) {
    auto t = cycle_type(p);
    return {t.begin(), t.end()};
}

// Orbital graph connectivity, used for the primitivity criterion.
inline bool orbital_graph_connected(const Orbital& o) {
    detail::UnionFind uf(o.degree);
    for (auto [i, j] : o.pairs) uf.unite(i, j);
    return detail::classes(uf, o.degree).size() == 1;
}

} // namespace fqm
