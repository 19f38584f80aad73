#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>

#include "fqm/fqm.hpp"

using namespace fqm;

namespace {

Cyclotomic c(long v) { return Cyclotomic(v); }

Rat ratio(const Int& a, const Int& b) {
    Rat r(a, b);
    r.canonicalize();
    return r;
}

StateVector random_natural(std::mt19937_64& rng, int n, int hi) {
    std::uniform_int_distribution<long> d(0, hi);
    StateVector v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

Int total(const StateVector& m) { return std::accumulate(m.begin(), m.end(), Int(0)); }

Int dot(const StateVector& m, const StateVector& n) {
    Int s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += Int(m[i]) * Int(n[i]);
    return s;
}

std::vector<int> exponents(const FactorizationResult& fr) {
    std::vector<int> e;
    for (const auto& f : fr.factors) e.push_back(f.exponent);
    std::sort(e.begin(), e.end());
    return e;
}

bool has_factor(const FactorizationResult& fr, const std::vector<Cyclotomic>& coeffs, int exponent) {
    return std::any_of(fr.factors.begin(), fr.factors.end(),
                       [&](const LinearFactor& f) { return f.coeffs == coeffs && f.exponent == exponent; });
}

bool has_form(const std::vector<InvariantForm>& forms, const std::vector<Cyclotomic>& x, const Rat& norm) {
    return std::any_of(forms.begin(), forms.end(),
                       [&](const InvariantForm& f) { return f.x == x && f.normalization == norm; });
}

struct Component {
    std::vector<IntMatrix> basis;
    std::vector<InvariantForm> forms;
    std::vector<ComponentForm> parts;
};

Component decompose(const std::string& group, int conductor) {
    Component d;
    d.basis = matrices(basis_forms(fixtures::group(group)));
    auto fr = factor_det(d.basis, det_poly(d.basis, true), conductor);
    d.forms = invariant_scalar_products(d.basis, fr);
    for (const auto& f : d.forms) d.parts.push_back(make_component(std::to_string(f.label + 1), d.basis, f));
    return d;
}

std::vector<std::size_t> with_dimension(const Component& d, int dim) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < d.forms.size(); ++k)
        if (d.forms[k].dimension == dim) out.push_back(k);
    return out;
}

bool criterion1() {
    auto d = decompose("S3", 3);
    auto two = with_dimension(d, 2);
    if (two.size() != 1) return false;
    const auto& f = d.parts[two[0]];
    if (born_probability(f, {1, 3, 2}, {1, 1, 2}) != 0) return false;
    std::mt19937_64 rng(1);
    for (int t = 0; t < 100; ++t) {
        auto m = random_natural(rng, 3, 9), n = random_natural(rng, 3, 9);
        auto v = scalar_product(f, m, n);
        if (!v.rational || v.value.rational_value() != Rat(dot(m, n)) - ratio(total(m) * total(n), 3)) return false;
    }
    return true;
}

bool criterion2() {
    auto m = matrices(basis_forms(fixtures::group("SL23deg8")));
    if (m.size() != 4 || m != fixtures::sl23_printed_basis()) return false;
    auto det = det_poly(m);
    auto fr = factor_det(m, det, 3);
    const Cyclotomic w = Cyclotomic::root(3), t = c(1) + w.scaled(2);
    if (exponents(fr) != std::vector<int>{1, 2, 2, 3}) return false;
    if (!has_factor(fr, {c(1), c(1), c(3), c(3)}, 1) || !has_factor(fr, {c(1), c(-1), t, -t}, 2) ||
        !has_factor(fr, {c(1), c(-1), -t, t}, 2) || !has_factor(fr, {c(1), c(1), c(-1), c(-1)}, 3))
        return false;
    if (!(fr.expand(4) == det)) return false;
    auto forms = invariant_scalar_products(m, fr);
    const Cyclotomic s = t.scaled(Rat(1, 3));
    if (!has_form(forms, {c(1), c(1), c(1), c(1)}, Rat(1, 8)) || !has_form(forms, {c(1), c(-1), -s, s}, Rat(1, 4)) ||
        !has_form(forms, {c(1), c(-1), s, -s}, Rat(1, 4)) ||
        !has_form(forms, {c(1), c(1), Cyclotomic(Rat(-1, 3)), Cyclotomic(Rat(-1, 3))}, Rat(3, 8)))
        return false;
    CMatrix sum = cmatrix(8, 8);
    for (const auto& f : forms) sum = sum + form_matrix(m, f.coefficients());
    return sum == identity_cmatrix(8);
}

bool criterion3() {
    auto m = matrices(basis_forms(fixtures::group("A2roots")));
    if (m.size() != 6 || m != fixtures::a2_printed_basis()) return false;
    auto t = structure_tables(m);
    auto vec = [](std::initializer_list<std::pair<int, int>> entries) {
        std::vector<int> v(6, 0);
        for (auto [i, x] : entries) v[i - 1] = x;
        return v;
    };
    const std::vector<std::tuple<int, int, std::vector<int>>> table{
        {2, 3, vec({{4, 1}, {5, -1}})},  {3, 6, vec({{4, 1}, {5, -1}})},  {2, 4, vec({{3, -1}, {5, 1}})},
        {4, 6, vec({{3, -1}, {5, 1}})},  {2, 5, vec({{3, 1}, {4, -1}})},  {5, 6, vec({{3, 1}, {4, -1}})},
        {3, 4, vec({{2, -1}, {6, 1}})},  {3, 5, vec({{2, 1}, {6, -1}})},  {4, 5, vec({{2, -1}, {6, 1}})},
        {2, 6, vec({})}};
    for (const auto& [p, q, v] : table)
        if (t.commutator(p - 1, q - 1) != v) return false;
    auto co = coarsen_commutative(m, t);
    if (co.groups != std::vector<std::vector<int>>{{0}, {1}, {2, 3, 4}, {5}}) return false;
    auto fr = factor_det(co.forms, det_poly(co.forms), 3);
    if (fr.factors.size() != 4) return false;
    for (const auto& f : fr.factors)
        if (f.coeffs.size() != 4) return false;
    const Cyclotomic w = Cyclotomic::root(3), u = -(c(1) + w);
    auto forms = invariant_scalar_products(co.forms, fr);
    return has_form(forms, {c(1), c(1), c(1), c(1)}, Rat(1, 6)) && has_form(forms, {c(1), c(1), c(-1), c(1)}, Rat(1, 6)) &&
           has_form(forms, {c(1), u, c(0), w}, Rat(1, 3)) && has_form(forms, {c(1), w, c(0), u}, Rat(1, 3));
}

bool criterion4() {
    auto a = fixtures::group("A5ico");
    auto orbs = orbitals(a);
    if (orbs.size() != 4) return false;
    std::mt19937_64 rng(2);
    for (int t = 0; t < 1000; ++t) {
        auto m = random_natural(rng, 12, 5), n = random_natural(rng, 12, 5);
        Int s = 0;
        for (const auto& o : orbs) s += orbital_pairing(o, m, n);
        if (s != total(m) * total(n)) return false;
    }
    auto d = decompose("A5ico", 5);
    auto three = with_dimension(d, 3);
    if (three.size() != 2) return false;
    StateVector m{1, 0, 2, 0, 0, 3, 0, 1, 0, 0, 0, 0}, n{0, 1, 0, 0, 4, 0, 0, 0, 1, 0, 2, 0};
    for (auto k : three) {
        try {
            born_probability(d.parts[k], m, n);
            return false;
        } catch (const IrrationalProbability&) {
        }
    }
    auto both = combine({d.parts[three[0]], d.parts[three[1]]});
    // Orbital order: identity Q, neighbors B, opposite A, distance two C.
    if (both.coeffs != std::vector<Cyclotomic>{Cyclotomic(Rat(1, 2)), c(0), Cyclotomic(Rat(-1, 2)), c(0)}) return false;
    for (int t = 0; t < 100; ++t) {
        auto x = random_natural(rng, 12, 3), y = random_natural(rng, 12, 3);
        try {
            Rat p = born_probability(both, x, y);
            if (p < 0 || p > 1) return false;
        } catch (const ZeroNorm&) {
        }
    }
    const std::map<std::string, std::vector<int>> dims{{"A5deg5", {1, 4}}, {"A5deg6", {1, 5}}, {"A5deg10", {1, 4, 5}}};
    for (const auto& [name, want] : dims) {
        auto b = matrices(basis_forms(fixtures::group(name)));
        if (exponents(factor_det(b, det_poly(b, true), 5)) != want) return false;
    }
    return true;
}

bool criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    auto cl = classify_elementary();
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cl.reducible != 118 || cl.irreducible != 138 || cl.primes != std::vector<int>{105, 150} || dt > 10) return false;
    auto r30 = elementary_relation(30);
    auto d30 = canonical_decomposition(r30);
    if (r30.bit_string() != "1001010101101010" || d30.consequences.size() != 2) return false;
    if (d30.consequences[0].face != std::vector<std::string>{"p", "q", "s"} ||
        d30.consequences[1].face != std::vector<std::string>{"p", "r", "s"})
        return false;
    for (const auto& cq : d30.consequences)
        if (cq.relation.bit_string() != "11011110") return false;
    if (d30.factor.bit_string() != "1011111101111111") return false;
    auto r110 = elementary_relation(110);
    if (r110.bit_string() != "1100000100111110") return false;
    auto d110 = canonical_decomposition(r110);
    const std::vector<std::pair<std::vector<std::string>, std::string>> faces{
        {{"p", "q", "s"}, "11011111"}, {{"p", "r", "s"}, "11011111"}, {{"q", "r", "s"}, "10010111"}};
    if (d110.consequences.size() != faces.size()) return false;
    for (std::size_t k = 0; k < faces.size(); ++k)
        if (d110.consequences[k].face != faces[k].first || d110.consequences[k].relation.bit_string() != faces[k].second)
            return false;
    return to_anf(r110).to_string() == "pqr+qr+s+r+q" && d110.factor.bit_string() == "1111111111111110";
}

// Elementary symmetric polynomial of degree k mod 2 from the count of ones (Lucas).
int esym(int ones, int k) { return k <= ones && (k & ones) == k; }

bool criterion6() {
    auto life = life_relation();
    if (life.count() != 512) return false;
    const auto& pts = life.points();
    auto without = [&](const std::string& p) {
        auto v = pts;
        v.erase(std::find(v.begin(), v.end(), p));
        return v;
    };
    std::vector<Relation> r1;
    for (int i = 1; i <= 8; ++i) r1.push_back(project(life, without("x" + std::to_string(i))));
    auto r2 = project(life, without("x9"));
    for (int skip = 0; skip < 8; ++skip) {
        std::vector<Relation> sys{r2};
        for (int i = 0; i < 8; ++i)
            if (i != skip) sys.push_back(r1[i]);
        if (!(extend(base_relation(sys), pts) == life)) return false;
    }
    auto p = to_anf(life);
    for (std::size_t code = 0; code < 1024; ++code) {
        std::vector<int> x(10);
        int ones = 0;
        for (int i = 0; i < 10; ++i) x[i] = (code >> i) & 1;
        for (int i = 0; i < 8; ++i) ones += x[i];
        int want = (x[9] + x[8] * (esym(ones, 7) + esym(ones, 6) + esym(ones, 3) + esym(ones, 2)) + esym(ones, 7) +
                    esym(ones, 3)) & 1;
        if (static_cast<int>(p.evaluate(x)) != want) return false;
    }
    return true;
}

bool criterion7() {
    auto g = fixtures::cube();
    auto a = fixtures::group("cubeAut");
    auto part = orbit_partition(8, a.generators(), 2);
    std::map<std::size_t, int> want{{1, 2}, {2, 1}, {4, 2}, {6, 2}, {8, 5}, {12, 4}, {24, 6}};
    if (part.orbits.size() != 22 || part.census != want) return false;
    auto pp = phase_portrait(g, SymmetricRule::parse("B123/S0"), a.generators());
    if (pp.states != 256) return false;
    Rat sum = 0;
    for (const auto& w : pp.weights) sum += w;
    if (sum != 1) return false;
    for (std::size_t k = 0; k < pp.next.size(); ++k)
        if (pp.orbit_size[pp.next[k]] > pp.orbit_size[k]) return false;
    for (const auto& cyc : pp.cycles)
        for (int o : cyc)
            if (pp.orbit_size[o] != pp.orbit_size[cyc[0]]) return false;
    return true;
}

bool criterion8() {
    auto g = fixtures::torus(8);
    auto group = fixtures::group("torus8");
    const auto& elems = group.closure();
    auto rule = SymmetricRule::parse("B3/S23");
    std::vector<SystemState> traj{fixtures::glider()};
    for (int t = 0; t < 4; ++t) traj.push_back(evolve(traj.back(), rule, g));
    auto w = soliton_witness(traj, elems);
    if (!w || w->t1 - w->t0 > 4 || w->g.is_identity() || act(traj[w->t0], w->g) != traj[w->t1]) return false;
    // Quotient cycle over two orbits.
    std::set<std::vector<int>> forms;
    for (const auto& s : traj) forms.insert(canonical_form(s, elems));
    return forms.size() == 2 && canonical_form(traj[0], elems) == canonical_form(traj[2], elems);
}

bool criterion9() {
    auto hit = smallest_destructive_order(8, 20, 4);
    if (!hit || hit->M != 4) return false;
    for (int T = 0; T <= 10; ++T) {
        Cyclotomic s;
        for (int x = -T; x <= T; ++x) s += amplitude(1, T, x);
        Int p = 1;
        for (int i = 0; i < T; ++i) p *= 3;
        if (s != Cyclotomic(Rat(p))) return false;
    }
    auto z0 = exact_zero_positions(interference(4, 20, {{-4, 0}, {4, 0}}));
    auto zpi = exact_zero_positions(interference(4, 20, {{-4, 0}, {4, 2}}));
    for (int x : z0)
        if (std::count(zpi.begin(), zpi.end(), x)) return false;
    return true;
}

long paths(int dx, int dt) {
    if (dt < 0 || std::abs(dx) > dt || (dt - dx) % 2) return 0;
    long r = 1;
    int k = (dt + dx) / 2;
    for (int i = 1; i <= k; ++i) r = r * (dt - k + i) / i;
    return r;
}

bool criterion10() {
    for (int T = 1; T <= 12; ++T)
        for (int X = -T; X <= T; X += 2)
            for (int t = 0; t <= T; ++t)
                for (int x = -t; x <= t; x += 2) {
                    if (std::abs(X - x) > T - t) continue;
                    Rat p = conditional_probability(x, t, X, T);
                    if (p != ratio(paths(x, t) * paths(X - x, T - t), paths(X, T))) return false;
                    for (Rat p1 : {Rat(1, 3), Rat(3, 4)}) {
                        Rat b = binomial_probability((t + x) / 2, (t - x) / 2, p1) *
                                binomial_probability((T - t + X - x) / 2, (T - t - X + x) / 2, p1) /
                                binomial_probability((T + X) / 2, (T - X) / 2, p1);
                        if (b != p) return false;
                    }
                }
    bool degenerate = false;
    for (const auto& s : exact_slice_maxima(0, 12))
        if (s.t > 0 && s.t < 12 && s.argmax.size() >= 2) degenerate = true;
    if (!degenerate) return false;
    for (int t = 1; t < 12; ++t)
        if (approx_slice_argmax(t, 0, 12, 0.3, 0.01).size() != 1) return false;
    return true;
}

bool criterion11() {
    auto sq = fixtures::squared_moduli(fixtures::swap_columns(fixtures::s3_transformation(), 0, 1));
    const std::vector<std::vector<Rat>> want{{Rat(2, 3), Rat(1, 3), Rat(0)},
                                             {Rat(1, 6), Rat(1, 3), Rat(1, 2)},
                                             {Rat(1, 6), Rat(1, 3), Rat(1, 2)}};
    return sq == want && fixtures::squared_moduli(fixtures::tribimaximal()) == want;
}

bool criterion12() {
    std::mt19937_64 rng(12);
    const std::vector<int> conductors{1, 3, 4, 5, 8, 12, 15, 24};
    auto element = [&](int n) {
        std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
        std::vector<Rat> co(euler_phi(n));
        for (auto& x : co) x = ratio(num(rng), den(rng));
        return Cyclotomic::from_coords(n, co);
    };
    for (int t = 0; t < 10000; ++t) {
        int n = conductors[t % conductors.size()];
        auto a = element(n), b = element(conductors[(t / 8) % conductors.size()]), e = element(n);
        if (a * (b + e) != a * b + a * e || (a * b) * e != a * (b * e) || a + b != b + a) return false;
        if (!a.is_zero() && a * a.inverse() != c(1)) return false;
        long j = 1, k = 1;
        for (long u = 1 + t % n; u < 2 * n; ++u)
            if (std::gcd(u % n, static_cast<long>(n)) == 1) {
                j = u % n;
                break;
            }
        for (long u = 1 + (t / 3) % n; u < 2 * n; ++u)
            if (std::gcd(u % n, static_cast<long>(n)) == 1) {
                k = u % n;
                break;
            }
        if (n > 1 && (a.galois(j).galois(k) != a.galois(j * k % n) || (a * e).galois(k) != a.galois(k) * e.galois(k)))
            return false;
        auto r = abs2(a);
        if (r.conjugate() != r) return false;
    }
    for (const auto& name : fixtures::group_names()) {
        auto a = fixtures::group(name);
        const int n = a.degree();
        std::vector<int> label(static_cast<std::size_t>(n) * n, -1);
        auto orbs = orbitals(a);
        for (std::size_t k = 0; k < orbs.size(); ++k)
            for (auto [i, j] : orbs[k].pairs) {
                if (label[i * n + j] != -1) return false;
                label[i * n + j] = static_cast<int>(k);
            }
        for (const auto& g : a.generators())
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (label[i * n + j] < 0 || label[g(i) * n + g(j)] != label[i * n + j]) return false;
    }
    // Flat iff every square face has identity holonomy.
    auto g = fixtures::cube();
    std::vector<std::vector<int>> faces;
    for (int b = 0; b < 3; ++b)
        for (int v = 0; v < 2; ++v) {
            int i = 1 << ((b + 1) % 3), j = 1 << ((b + 2) % 3), x = v << b;
            faces.push_back({x, x ^ i, x ^ i ^ j, x ^ j, x});
        }
    auto perm = [&](int q) {
        std::vector<int> v(q);
        std::iota(v.begin(), v.end(), 0);
        std::shuffle(v.begin(), v.end(), rng);
        return Permutation(v);
    };
    for (int t = 0; t < 200; ++t) {
        Connection con(g, 3);
        if (t % 2 == 0) {
            std::vector<Permutation> alpha;
            for (int v = 0; v < 8; ++v) alpha.push_back(perm(3));
            con = trivial_connection(g, alpha);
        } else {
            for (auto [i, j] : g.edges) con.set(i, j, perm(3));
        }
        bool flat = true;
        for (const auto& f : faces) flat = flat && holonomy(con, f).is_identity();
        if (is_trivial_connection(con).has_value() != flat) return false;
    }
    return true;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<bool()>>> criteria{
        {"S3 destructive interference and 2-dim form", criterion1},
        {"SL(2,3) degree 8 orbitals, factors and forms", criterion2},
        {"A2 commutators, coarsening and forms", criterion3},
        {"A5 icosahedron identity, combined 3-dim forms, degrees 5/6/10", criterion4},
        {"elementary automata census and rule 30/110 decompositions", criterion5},
        {"Life relation size, decomposition and polynomial", criterion6},
        {"cube rule 86 census and phase portrait", criterion7},
        {"glider soliton on 8x8 torus", criterion8},
        {"path sums: smallest order, totals, zero sets", criterion9},
        {"spacetime conditional probabilities and maxima", criterion10},
        {"tribimaximal squared moduli", criterion11},
        {"property suites", criterion12}};
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        bool ok = false;
        std::string note;
        auto t0 = std::chrono::steady_clock::now();
        try {
            ok = criteria[k].second();
        } catch (const std::exception& e) {
            note = std::string(" (") + e.what() + ")";
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (dt > 60) {
            ok = false;
            note += " (over 60 s)";
        }
        if (!ok) ++failed;
        std::printf("%s %zu %s [%.2fs]%s\n", ok ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), dt, note.c_str());
    }
    return failed == 0 ? 0 : 1;
}
