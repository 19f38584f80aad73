#pragma once

#include <map>
#include <string>
#include <vector>

#include "fqm/cyclo.hpp"

namespace fqm {

// Coefficient traits so Poly<T> works over Z, Q and cyclotomic fields alike.
inline bool coef_is_zero(const Int& c) { return sgn(c) == 0; }
inline bool coef_is_zero(const Rat& c) { return sgn(c) == 0; }
inline bool coef_is_zero(const Cyclotomic& c) { return c.is_zero(); }

inline Int coef_div(const Int& a, const Int& b) {
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) throw NotInRing("inexact integer division");
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}
inline Rat coef_div(const Rat& a, const Rat& b) { return a / b; }
inline Cyclotomic coef_div(const Cyclotomic& a, const Cyclotomic& b) { return a / b; }

inline std::string coef_str(const Int& c) { return c.get_str(); }
inline std::string coef_str(const Rat& c) { return c.get_str(); }
inline std::string coef_str(const Cyclotomic& c) { return c.to_string(); }

using Monomial = std::vector<int>; // exponent per variable

inline int monomial_degree(const Monomial& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

// Sparse multivariate polynomial; map order is lex with variable 0 most significant.
template <class C>
class Poly {
public:
    Poly() = default;
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, const C& c) {
        Poly p(nvars);
        if (!coef_is_zero(c)) p.terms_[Monomial(nvars, 0)] = c;
        return p;
    }
    static Poly variable(int nvars, int i, const C& c = C(1)) {
        Poly p(nvars);
        Monomial m(nvars, 0);
        m[i] = 1;
        if (!coef_is_zero(c)) p.terms_[m] = c;
        return p;
    }

    int nvars() const { return nvars_; }
    const std::map<Monomial, C>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    int degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
        return d;
    }
    bool is_homogeneous() const {
        int d = -1;
        for (const auto& [m, c] : terms_) {
            if (d < 0) d = monomial_degree(m);
            if (monomial_degree(m) != d) return false;
        }
        return true;
    }

    C coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? C(0) : it->second;
    }

    void add_term(const Monomial& m, const C& c) {
        if (coef_is_zero(c)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (coef_is_zero(it->second)) terms_.erase(it);
        }
    }

    Poly operator-() const {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend Poly operator+(Poly a, const Poly& b) {
        for (const auto& [m, c] : b.terms_) a.add_term(m, c);
        return a;
    }
    friend Poly operator-(Poly a, const Poly& b) {
        for (const auto& [m, c] : b.terms_) a.add_term(m, -c);
        return a;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r(std::max(a.nvars_, b.nvars_));
        Monomial mm(r.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                for (int i = 0; i < r.nvars_; ++i) mm[i] = ma[i] + mb[i];
                r.add_term(mm, ca * cb);
            }
        return r;
    }
    Poly scaled(const C& s) const {
        Poly r(nvars_);
        if (coef_is_zero(s)) return r;
        for (const auto& [m, c] : terms_) r.add_term(m, c * s);
        return r;
    }
    Poly pow(int e) const {
        Poly r = constant(nvars_, C(1));
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        auto i = a.terms_.begin();
        auto j = b.terms_.begin();
        for (; i != a.terms_.end(); ++i, ++j)
            if (i->first != j->first || !(i->second == j->second)) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Exact quotient a / b; throws NotInRing when b does not divide a.
    friend Poly divide_exact(Poly a, const Poly& b) {
        if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
        Poly q(a.nvars_);
        const auto& [lm, lc] = *b.terms_.rbegin();
        Monomial t(a.nvars_);
        while (!a.is_zero()) {
            const auto& [am, ac] = *a.terms_.rbegin();
            for (int i = 0; i < a.nvars_; ++i) {
                t[i] = am[i] - lm[i];
                if (t[i] < 0) throw NotInRing("polynomial does not divide");
            }
            C c = coef_div(ac, lc);
            Poly term(a.nvars_);
            term.terms_[t] = c;
            q.add_term(t, c);
            a = a - term * b;
        }
        return q;
    }

    // Sets variable i to the constant v.
    Poly substitute(int i, const C& v) const {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) {
            Monomial mm = m;
            C cc = c;
            for (int e = 0; e < m[i]; ++e) cc = cc * v;
            mm[i] = 0;
            r.add_term(mm, cc);
        }
        return r;
    }

    // Drops all terms of total degree above d.
    Poly truncated(int d) const {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_)
            if (monomial_degree(m) <= d) r.terms_.emplace(m, c);
        return r;
    }

    // Multiplies each term by x_i^(d - deg) to make it homogeneous of degree d.
    Poly homogenized(int i, int d) const {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) {
            Monomial mm = m;
            mm[i] += d - monomial_degree(m);
            r.add_term(mm, c);
        }
        return r;
    }

    template <class V>
    V evaluate(const std::vector<V>& x) const {
        V s(0);
        for (const auto& [m, c] : terms_) {
            V t = V(c);
            for (int i = 0; i < nvars_; ++i)
                for (int e = 0; e < m[i]; ++e) t = t * x[i];
            s = s + t;
        }
        return s;
    }

    std::string to_string(const std::vector<std::string>& names = {}) const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!s.empty()) s += " + ";
            s += "(" + coef_str(it->second) + ")";
            for (int i = 0; i < nvars_; ++i) {
                if (it->first[i] == 0) continue;
                s += "*" + (names.empty() ? "a" + std::to_string(i + 1) : names[i]);
                if (it->first[i] > 1) s += "^" + std::to_string(it->first[i]);
            }
        }
        return s;
    }

private:
    int nvars_ = 0;
    std::map<Monomial, C> terms_;
};

template <class To, class From>
Poly<To> poly_cast(const Poly<From>& p) {
    Poly<To> r(p.nvars());
    for (const auto& [m, c] : p.terms()) r.add_term(m, To(c));
    return r;
}

inline Poly<Cyclotomic> to_cyclotomic(const Poly<Int>& p) {
    Poly<Cyclotomic> r(p.nvars());
    for (const auto& [m, c] : p.terms()) r.add_term(m, Cyclotomic(Rat(c)));
    return r;
}

// Fraction-free (Bareiss) determinant with row pivoting on zero pivots.
template <class C>
Poly<C> bareiss_det(std::vector<std::vector<Poly<C>>> a, int nvars) {
    const std::size_t n = a.size();
    if (n == 0) return Poly<C>::constant(nvars, C(1));
    Poly<C> prev = Poly<C>::constant(nvars, C(1));
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && a[p][k].is_zero()) ++p;
            if (p == n) return Poly<C>(nvars);
            std::swap(a[p], a[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly<C> num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = divide_exact(std::move(num), prev);
            }
            a[i][k] = Poly<C>(nvars);
        }
        prev = a[k][k];
    }
    Poly<C> d = a[n - 1][n - 1];
    return negate ? -d : d;
}

} // namespace fqm
