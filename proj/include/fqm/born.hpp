#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "fqm/cyclo.hpp"
#include "fqm/forms.hpp"

namespace fqm {

using StateVector = std::vector<long>;

inline Int orbital_pairing(const Orbital& o, const StateVector& m, const StateVector& n) {
    if (static_cast<int>(m.size()) != o.degree || static_cast<int>(n.size()) != o.degree)
        throw DimensionMismatch("state vector length differs from action degree");
    Int s = 0;
    for (auto [i, j] : o.pairs) s += Int(m[i]) * Int(n[j]);
    return s;
}

inline Int matrix_pairing(const IntMatrix& a, const StateVector& m, const StateVector& n) {
    if (a.rows() != static_cast<long>(m.size()) || a.cols() != static_cast<long>(n.size()))
        throw DimensionMismatch("state vector length differs from form size");
    Int s = 0;
    for (int i = 0; i < a.rows(); ++i) {
        if (m[i] == 0) continue;
        Int row = 0;
        for (int j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0) row += Int(a(i, j)) * Int(n[j]);
        s += Int(m[i]) * row;
    }
    return s;
}

// Invariant form as a coefficient list over a (possibly coarsened) orbital basis.
struct ComponentForm {
    std::string label;
    std::vector<IntMatrix> basis;
    std::vector<Cyclotomic> coeffs;

    int degree() const { return basis.empty() ? 0 : static_cast<int>(basis[0].rows()); }
};

inline ComponentForm make_component(std::string label, const std::vector<IntMatrix>& basis,
                                    const InvariantForm& f) {
    return ComponentForm{std::move(label), basis, f.coefficients()};
}

inline ComponentForm combine(const std::vector<ComponentForm>& forms) {
    ComponentForm c = forms.at(0);
    for (std::size_t k = 1; k < forms.size(); ++k) {
        c.label += "+" + forms[k].label;
        for (std::size_t r = 0; r < c.coeffs.size(); ++r) c.coeffs[r] += forms[k].coeffs[r];
    }
    return c;
}

struct PairingValue {
    Cyclotomic value;
    bool rational = false;
};

inline PairingValue scalar_product(const ComponentForm& f, const StateVector& m, const StateVector& n) {
    Cyclotomic s;
    for (std::size_t r = 0; r < f.basis.size(); ++r) {
        if (f.coeffs[r].is_zero()) continue;
        Int p = matrix_pairing(f.basis[r], m, n);
        if (p != 0) s += f.coeffs[r].scaled(Rat(p));
    }
    return {s, s.is_rational()};
}

inline Rat born_probability(const ComponentForm& f, const StateVector& m, const StateVector& n) {
    const Cyclotomic mm = scalar_product(f, m, m).value;
    const Cyclotomic nn = scalar_product(f, n, n).value;
    if (mm.is_zero() || nn.is_zero()) throw ZeroNorm("state has zero projection on component " + f.label);
    const Cyclotomic mn = scalar_product(f, m, n).value;
    const Cyclotomic p = abs2(mn) / (mm * nn);
    if (!p.is_rational()) throw IrrationalProbability("probability on component " + f.label + " is irrational");
    return p.rational_value();
}

// Galois conjugates of forms[k] found among forms, summed.
inline ComponentForm combine_conjugates(const std::vector<ComponentForm>& forms, std::size_t k) {
    int n = 1;
    for (const auto& c : forms[k].coeffs) n = std::lcm(n, c.conductor());
    std::vector<std::size_t> members{k};
    for (long g = 2; g < n; ++g) {
        if (std::gcd(g, static_cast<long>(n)) != 1) continue;
        std::vector<Cyclotomic> img;
        for (const auto& c : forms[k].coeffs) img.push_back(c.galois(g % c.conductor() == 0 ? 1 : g));
        for (std::size_t j = 0; j < forms.size(); ++j)
            if (forms[j].coeffs == img && std::find(members.begin(), members.end(), j) == members.end())
                members.push_back(j);
    }
    std::sort(members.begin(), members.end());
    std::vector<ComponentForm> sel;
    for (auto j : members) sel.push_back(forms[j]);
    return combine(sel);
}

inline bool cauchy_check(const ComponentForm& f, const StateVector& m, const StateVector& n) {
    const Cyclotomic lhs = abs2(scalar_product(f, m, n).value);
    const Cyclotomic rhs = scalar_product(f, m, m).value * scalar_product(f, n, n).value;
    const Cyclotomic d = rhs - lhs;
    if (d.is_rational()) return sgn(d.rational_value()) >= 0;
    return d.to_complex().real() >= -1e-9;
}

// Calls emit(m, n) for every pair with vanishing scalar product and nonzero norms,
// entries in [lo..bound], m outer and n inner in lexicographic order; emit returns false to stop.
inline void destructive_search(const ComponentForm& f, int bound, bool require_positive,
                               const std::function<bool(const StateVector&, const StateVector&)>& emit) {
    const int N = f.degree();
    const int lo = require_positive ? 1 : 0;
    std::vector<StateVector> vecs;
    StateVector v(N, lo);
    while (true) {
        vecs.push_back(v);
        int i = N - 1;
        while (i >= 0 && v[i] == bound) v[i--] = lo;
        if (i < 0) break;
        ++v[i];
    }
    std::vector<char> nonzero(vecs.size());
    for (std::size_t i = 0; i < vecs.size(); ++i) nonzero[i] = !scalar_product(f, vecs[i], vecs[i]).value.is_zero();
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        if (!nonzero[i]) continue;
        for (std::size_t j = 0; j < vecs.size(); ++j) {
            if (!nonzero[j]) continue;
            if (scalar_product(f, vecs[i], vecs[j]).value.is_zero())
                if (!emit(vecs[i], vecs[j])) return;
        }
    }
}

} // namespace fqm
