#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "fqm/errors.hpp"

namespace fqm {

// Subset of Sigma^points; bit i is the tuple whose mixed-radix code is i, first point least significant.
class Relation {
public:
    Relation() = default;
    Relation(std::vector<std::string> points, int q, std::vector<bool> bits)
        : points_(std::move(points)), q_(q), bits_(std::move(bits)) {
        if (q_ < 2) throw UnsupportedQ("alphabet must have at least two states");
        if (bits_.size() != space_size()) throw LengthMismatch("bit count differs from q^|points|");
        std::set<std::string> s(points_.begin(), points_.end());
        if (s.size() != points_.size()) throw ParseError("point labels must be distinct");
    }

    static Relation full(std::vector<std::string> points, int q) {
        Relation r;
        r.points_ = std::move(points);
        r.q_ = q;
        r.bits_.assign(r.space_size(), true);
        return r;
    }
    static Relation empty(std::vector<std::string> points, int q) {
        Relation r = full(std::move(points), q);
        r.bits_.assign(r.bits_.size(), false);
        return r;
    }

    const std::vector<std::string>& points() const { return points_; }
    int q() const { return q_; }
    int arity() const { return static_cast<int>(points_.size()); }
    const std::vector<bool>& bits() const { return bits_; }
    std::size_t space_size() const {
        std::size_t s = 1;
        for (std::size_t i = 0; i < points_.size(); ++i) s *= static_cast<std::size_t>(q_);
        return s;
    }

    bool contains(std::size_t code) const { return bits_[code]; }
    void set(std::size_t code, bool v) { bits_[code] = v; }
    std::size_t count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }
    bool is_trivial() const { return count() == bits_.size(); }

    std::vector<int> decode(std::size_t code) const {
        std::vector<int> t(points_.size());
        for (int i = 0; i < arity(); ++i) {
            t[i] = static_cast<int>(code % q_);
            code /= q_;
        }
        return t;
    }
    std::size_t encode(const std::vector<int>& t) const {
        std::size_t c = 0;
        for (auto it = t.rbegin(); it != t.rend(); ++it) c = c * q_ + *it;
        return c;
    }

    int index_of(const std::string& p) const {
        auto it = std::find(points_.begin(), points_.end(), p);
        return it == points_.end() ? -1 : static_cast<int>(it - points_.begin());
    }

    std::string bit_string() const {
        std::string s;
        for (bool b : bits_) s += b ? '1' : '0';
        return s;
    }

    friend bool operator==(const Relation& a, const Relation& b) {
        return a.points_ == b.points_ && a.q_ == b.q_ && a.bits_ == b.bits_;
    }

private:
    std::vector<std::string> points_;
    int q_ = 2;
    std::vector<bool> bits_;
};

inline Relation relation_from_bits(std::vector<std::string> points, int q, const std::string& bits) {
    std::vector<bool> b;
    for (char c : bits) {
        if (c != '0' && c != '1') throw ParseError("bit strings contain only 0 and 1");
        b.push_back(c == '1');
    }
    return Relation(std::move(points), q, std::move(b));
}

inline Relation extend(const Relation& r, const std::vector<std::string>& superset) {
    std::vector<int> pos;
    for (const auto& p : r.points()) {
        auto it = std::find(superset.begin(), superset.end(), p);
        if (it == superset.end()) throw NotSuperset("point " + p + " missing from the superset");
        pos.push_back(static_cast<int>(it - superset.begin()));
    }
    Relation out = Relation::empty(superset, r.q());
    std::vector<int> sub(pos.size());
    for (std::size_t c = 0; c < out.space_size(); ++c) {
        auto t = out.decode(c);
        for (std::size_t k = 0; k < pos.size(); ++k) sub[k] = t[pos[k]];
        out.set(c, r.contains(r.encode(sub)));
    }
    return out;
}

// Existential projection onto tau (order as given).
inline Relation project(const Relation& r, const std::vector<std::string>& tau) {
    std::vector<int> pos;
    for (const auto& p : tau) {
        int i = r.index_of(p);
        if (i < 0) throw NotSuperset("point " + p + " not in relation");
        pos.push_back(i);
    }
    Relation out = Relation::empty(tau, r.q());
    std::vector<int> sub(pos.size());
    for (std::size_t c = 0; c < r.space_size(); ++c) {
        if (!r.contains(c)) continue;
        auto t = r.decode(c);
        for (std::size_t k = 0; k < pos.size(); ++k) sub[k] = t[pos[k]];
        out.set(out.encode(sub), true);
    }
    return out;
}

inline Relation intersect(const Relation& a, const Relation& b) {
    if (a.points() != b.points() || a.q() != b.q()) throw DimensionMismatch("intersect needs equal domains");
    Relation out = a;
    for (std::size_t c = 0; c < a.space_size(); ++c) out.set(c, a.contains(c) && b.contains(c));
    return out;
}

// Intersection of extensions to the union of domains (points in first-seen order).
inline Relation base_relation(const std::vector<Relation>& rs) {
    if (rs.empty()) throw DimensionMismatch("base relation of an empty system");
    std::vector<std::string> dom;
    for (const auto& r : rs) {
        if (r.q() != rs[0].q()) throw UnsupportedQ("mixed alphabets are not supported");
        for (const auto& p : r.points())
            if (std::find(dom.begin(), dom.end(), p) == dom.end()) dom.push_back(p);
    }
    Relation out = Relation::full(dom, rs[0].q());
    for (const auto& r : rs) out = intersect(out, extend(r, dom));
    return out;
}

struct Consequence {
    std::vector<std::string> face;
    Relation relation;
};

// Nontrivial projections onto faces of codimension 1..max_codim.
inline std::vector<Consequence> proper_consequences(const Relation& r, int max_codim = 1) {
    std::vector<Consequence> out;
    const int k = r.arity();
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        int kept = __builtin_popcount(mask);
        int codim = k - kept;
        if (kept == 0 || codim < 1 || codim > max_codim) continue;
        std::vector<std::string> face;
        for (int i = 0; i < k; ++i)
            if (mask & (1u << (k - 1 - i))) face.push_back(r.points()[i]);
        Relation q = project(r, face);
        if (q.is_trivial()) continue;
        bool dup = std::any_of(out.begin(), out.end(),
                               [&](const Consequence& c) { return c.face == face && c.relation == q; });
        if (!dup) out.push_back({face, q});
    }
    std::stable_sort(out.begin(), out.end(), [&](const Consequence& a, const Consequence& b) {
        std::vector<int> ia, ib;
        for (const auto& p : a.face) ia.push_back(r.index_of(p));
        for (const auto& p : b.face) ib.push_back(r.index_of(p));
        return ia < ib;
    });
    return out;
}

inline Relation principal_factor(const Relation& r, const std::vector<Consequence>& cons) {
    Relation inter = Relation::full(r.points(), r.q());
    for (const auto& c : cons) {
        Relation e = extend(c.relation, r.points());
        for (std::size_t i = 0; i < r.space_size(); ++i)
            if (r.contains(i) && !e.contains(i)) throw NotConsequence("relation is not contained in the extension");
        inter = intersect(inter, e);
    }
    Relation p = r;
    for (std::size_t i = 0; i < r.space_size(); ++i) p.set(i, r.contains(i) || !inter.contains(i));
    return p;
}

struct Decomposition {
    std::vector<Consequence> consequences;
    Relation factor;
    bool reducible = false;
    bool prime = false;
    std::string consequence_set = "codim1";
    std::vector<Decomposition> children; // decompositions of the consequences, when depth > 0
};

inline Decomposition canonical_decomposition(const Relation& r, int depth = 0) {
    Decomposition d;
    d.consequences = proper_consequences(r, 1);
    d.factor = principal_factor(r, d.consequences);
    d.reducible = d.factor.is_trivial();
    d.prime = d.consequences.empty();
    Relation check = d.factor;
    for (const auto& c : d.consequences) check = intersect(check, extend(c.relation, r.points()));
    if (!(check == r)) throw NotConsequence("decomposition does not reproduce the relation");
    if (depth > 0)
        for (const auto& c : d.consequences) d.children.push_back(canonical_decomposition(c.relation, depth - 1));
    return d;
}

inline bool is_functional(const Relation& r, int position) {
    if (position < 0 || position >= r.arity()) throw OutOfRange("position out of range");
    std::vector<int> seen(r.space_size(), -1);
    for (std::size_t c = 0; c < r.space_size(); ++c) {
        if (!r.contains(c)) continue;
        auto t = r.decode(c);
        int v = t[position];
        t[position] = 0;
        std::size_t key = r.encode(t);
        if (seen[key] >= 0 && seen[key] != v) return false;
        seen[key] = v;
    }
    return true;
}

// Multilinear polynomial over GF(2); each monomial is a bitmask over points (bit i = point i).
struct AnfPoly {
    std::vector<std::string> points;
    std::set<std::uint32_t> monomials;

    bool evaluate(const std::vector<int>& x) const {
        int s = 0;
        for (auto m : monomials) {
            int t = 1;
            for (std::size_t i = 0; i < points.size() && t; ++i)
                if (m & (1u << i)) t &= x[i];
            s ^= t;
        }
        return s;
    }

    std::string to_string() const {
        if (monomials.empty()) return "0";
        std::vector<std::uint32_t> ms(monomials.begin(), monomials.end());
        std::sort(ms.begin(), ms.end(), [](std::uint32_t a, std::uint32_t b) {
            int da = __builtin_popcount(a), db = __builtin_popcount(b);
            return da != db ? da > db : a > b;
        });
        bool single = std::all_of(points.begin(), points.end(), [](const std::string& p) { return p.size() == 1; });
        std::string s;
        for (auto m : ms) {
            if (!s.empty()) s += "+";
            if (m == 0) {
                s += "1";
                continue;
            }
            std::string t;
            for (std::size_t i = 0; i < points.size(); ++i)
                if (m & (1u << i)) t += (t.empty() || single ? "" : "*") + points[i];
            s += t;
        }
        return s;
    }
};

// P(x) = 0 exactly on members: Moebius transform of the non-membership indicator.
inline AnfPoly to_anf(const Relation& r) {
    if (r.q() != 2) throw UnsupportedQ("polynomial form needs q = 2");
    const int k = r.arity();
    const std::size_t n = std::size_t(1) << k;
    // With q = 2 the code is already the mask with bit i = value of point i.
    std::vector<std::uint8_t> f(n);
    for (std::size_t code = 0; code < n; ++code) f[code] = r.contains(code) ? 0 : 1;
    for (int i = 0; i < k; ++i)
        for (std::size_t m = 0; m < n; ++m)
            if (m & (std::size_t(1) << i)) f[m] ^= f[m ^ (std::size_t(1) << i)];
    AnfPoly p{r.points(), {}};
    for (std::size_t m = 0; m < n; ++m)
        if (f[m]) p.monomials.insert(static_cast<std::uint32_t>(m));
    return p;
}

// Local relation of an elementary automaton on (p,q,r,s), s = next state of q.
inline Relation elementary_relation(int rule) {
    Relation r = Relation::empty({"p", "q", "r", "s"}, 2);
    for (std::size_t c = 0; c < 16; ++c) {
        auto t = r.decode(c);
        r.set(c, t[3] == ((rule >> (4 * t[0] + 2 * t[1] + t[2])) & 1));
    }
    return r;
}

// Outer-totalistic rule on k neighbors x1..xk, center x(k+1), next state x(k+2).
inline Relation symmetric_rule_relation(int k, const std::set<int>& birth, const std::set<int>& survive) {
    std::vector<std::string> pts;
    for (int i = 1; i <= k + 2; ++i) pts.push_back("x" + std::to_string(i));
    Relation r = Relation::empty(pts, 2);
    for (std::size_t c = 0; c < r.space_size(); ++c) {
        auto t = r.decode(c);
        int sum = 0;
        for (int i = 0; i < k; ++i) sum += t[i];
        int center = t[k], next = t[k + 1];
        int want = center ? survive.count(sum) > 0 : birth.count(sum) > 0;
        r.set(c, next == want);
    }
    return r;
}

inline Relation life_relation() { return symmetric_rule_relation(8, {3}, {2, 3}); }

struct Classification {
    int reducible = 0;
    int irreducible = 0;
    std::vector<int> primes;
};

inline Classification classify_elementary() {
    Classification c;
    for (int rule = 0; rule < 256; ++rule) {
        auto d = canonical_decomposition(elementary_relation(rule));
        if (d.reducible)
            ++c.reducible;
        else
            ++c.irreducible;
        if (d.prime) c.primes.push_back(rule);
    }
    return c;
}

inline std::vector<int> eca_step(const std::vector<int>& u, int rule) {
    const int w = static_cast<int>(u.size());
    std::vector<int> v(w);
    for (int x = 0; x < w; ++x) {
        int nb = 4 * u[(x - 1 + w) % w] + 2 * u[x] + u[(x + 1) % w];
        v[x] = (rule >> nb) & 1;
    }
    return v;
}

// Simulation against u = a(x-t) + t (rule 15) or u = sum_k C(t,k) a(x-t+2k) (rule 90), mod 2.
inline bool general_solution_check(int rule, const std::vector<int>& initial, int steps) {
    if (rule != 15 && rule != 90) throw OutOfRange("closed forms exist for rules 15 and 90 only");
    const int w = static_cast<int>(initial.size());
    std::vector<int> u = initial;
    for (int t = 0; t <= steps; ++t) {
        for (int x = 0; x < w; ++x) {
            int f;
            if (rule == 15) {
                f = (initial[((x - t) % w + w) % w] + t) & 1;
            } else {
                f = 0;
                for (int k = 0; k <= t; ++k)
                    if ((k & t) == k) f ^= initial[(((x - t + 2 * k) % w) + w) % w];
            }
            if (f != u[x]) return false;
        }
        u = eca_step(u, rule);
    }
    return true;
}

} // namespace fqm
