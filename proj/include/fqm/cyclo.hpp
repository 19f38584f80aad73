#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "fqm/errors.hpp"

namespace fqm {

using Int = mpz_class;
using Rat = mpq_class;

inline std::string to_string(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat parse_rational(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw ParseError("bad rational '" + s + "'");
    if (sgn(q.get_den()) == 0) throw DivisionByZero("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

inline long euler_phi(long n) {
    long r = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

inline std::vector<int> divisors(int n) {
    std::vector<int> d;
    for (int k = 1; k <= n; ++k)
        if (n % k == 0) d.push_back(k);
    return d;
}

struct CyclotomicPoly {
    int conductor = 1;
    std::vector<long long> coeffs; // ascending degree, monic

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

namespace detail {

// Exact division of integer polynomials by a monic divisor.
inline std::vector<long long> divide_monic(std::vector<long long> a, const std::vector<long long>& b) {
    const int db = static_cast<int>(b.size()) - 1;
    const int da = static_cast<int>(a.size()) - 1;
    if (da < db) return {0};
    std::vector<long long> q(da - db + 1, 0);
    for (int i = da; i >= db; --i) {
        long long c = a[i];
        q[i - db] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

} // namespace detail

inline const CyclotomicPoly& cyclotomic_polynomial(int n) {
    if (n < 1) throw OutOfRange("conductor must be positive");
    static std::mutex mu;
    static std::map<int, CyclotomicPoly> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    std::vector<long long> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d : divisors(n)) {
        if (d == n) continue;
        p = detail::divide_monic(p, cyclotomic_polynomial(d).coeffs);
    }
    std::lock_guard<std::mutex> lock(mu);
    auto [it, ok] = cache.emplace(n, CyclotomicPoly{n, std::move(p)});
    return it->second;
}

// Element of Q(w_n) in the power basis 1, w, ..., w^(phi(n)-1).
class Cyclotomic {
public:
    Cyclotomic() : n_(1), c_(1) {}
    Cyclotomic(long v) : n_(1), c_(1, Rat(v)) {}
    Cyclotomic(const Rat& q, int n = 1) : n_(n), c_(euler_phi(n)) { c_[0] = q; }

    // Reduces an arbitrary-length coefficient list in powers of w_n.
    static Cyclotomic from_raw(int n, std::vector<Rat> raw) {
        const auto& phi = cyclotomic_polynomial(n).coeffs;
        const int d = static_cast<int>(phi.size()) - 1;
        for (int i = static_cast<int>(raw.size()) - 1; i >= d; --i) {
            if (sgn(raw[i]) == 0) continue;
            Rat c = raw[i];
            for (int j = 0; j < d; ++j)
                if (phi[j] != 0) raw[i - d + j] -= c * Rat(static_cast<long>(phi[j]));
            raw[i] = 0;
        }
        raw.resize(d);
        Cyclotomic z;
        z.n_ = n;
        z.c_ = std::move(raw);
        return z;
    }

    static Cyclotomic from_coords(int n, std::vector<Rat> coords) {
        if (static_cast<long>(coords.size()) != euler_phi(n))
            throw DimensionMismatch("coordinate count must equal phi(n)");
        for (auto& c : coords) c.canonicalize();
        Cyclotomic z;
        z.n_ = n;
        z.c_ = std::move(coords);
        return z;
    }

    // w_n^k
    static Cyclotomic root(int n, long k = 1) {
        long e = ((k % n) + n) % n;
        std::vector<Rat> raw(e + 1);
        raw[e] = 1;
        return from_raw(n, std::move(raw));
    }

    int conductor() const { return n_; }
    const std::vector<Rat>& coords() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rat& q) { return sgn(q) == 0; });
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (sgn(c_[i]) != 0) return false;
        return true;
    }
    Rat rational_value() const { return c_[0]; }

    // Embeds into Q(w_m) for m a multiple of n.
    Cyclotomic lift(int m) const {
        if (m == n_) return *this;
        if (m % n_ != 0) throw OutOfRange("lift target must be a multiple of the conductor");
        if (is_rational()) return Cyclotomic(c_[0], m);
        const int s = m / n_;
        std::vector<Rat> raw((c_.size() - 1) * s + 1);
        for (std::size_t j = 0; j < c_.size(); ++j) raw[j * s] = c_[j];
        return from_raw(m, std::move(raw));
    }

    Cyclotomic galois(long k) const {
        if (std::gcd(((k % n_) + n_) % n_, static_cast<long>(n_)) != 1 && n_ > 1)
            throw NotCoprime("galois exponent not coprime to conductor");
        if (is_rational()) return *this;
        long kk = ((k % n_) + n_) % n_;
        std::vector<Rat> raw(n_);
        for (std::size_t j = 0; j < c_.size(); ++j) raw[(j * kk) % n_] += c_[j];
        return from_raw(n_, std::move(raw));
    }

    Cyclotomic conjugate() const { return galois(n_ - 1 == 0 ? 1 : n_ - 1); }

    std::complex<double> to_complex() const {
        std::complex<double> s = 0;
        const double t = 2.0 * M_PI / n_;
        for (std::size_t j = 0; j < c_.size(); ++j)
            if (sgn(c_[j]) != 0) s += c_[j].get_d() * std::polar(1.0, t * static_cast<double>(j));
        return s;
    }

    Cyclotomic operator-() const {
        Cyclotomic z = *this;
        for (auto& c : z.c_) c = -c;
        return z;
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        int m = std::lcm(a.n_, b.n_);
        Cyclotomic x = a.lift(m);
        const Cyclotomic y = b.lift(m);
        for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.is_rational()) return b.scaled(a.c_[0]);
        if (b.is_rational()) return a.scaled(b.c_[0]);
        int m = std::lcm(a.n_, b.n_);
        const Cyclotomic x = a.lift(m), y = b.lift(m);
        std::vector<Rat> raw(x.c_.size() + y.c_.size() - 1);
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (sgn(x.c_[i]) == 0) continue;
            for (std::size_t j = 0; j < y.c_.size(); ++j)
                if (sgn(y.c_[j]) != 0) raw[i + j] += x.c_[i] * y.c_[j];
        }
        return from_raw(m, std::move(raw));
    }

    Cyclotomic scaled(const Rat& q) const {
        Cyclotomic z = *this;
        for (auto& c : z.c_) c *= q;
        return z;
    }

    // Solves (mult-by-this) y = 1 over Q.
    Cyclotomic inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero cyclotomic");
        if (is_rational()) return Cyclotomic(1 / c_[0], n_);
        const std::size_t d = c_.size();
        std::vector<std::vector<Rat>> a(d, std::vector<Rat>(d + 1));
        Cyclotomic col = *this;
        const Cyclotomic w = root(n_, 1);
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t i = 0; i < d; ++i) a[i][j] = col.c_[i];
            col = col * w;
        }
        a[0][d] = 1;
        for (std::size_t k = 0; k < d; ++k) {
            std::size_t p = k;
            while (sgn(a[p][k]) == 0) ++p;
            std::swap(a[p], a[k]);
            for (std::size_t i = 0; i < d; ++i) {
                if (i == k || sgn(a[i][k]) == 0) continue;
                Rat f = a[i][k] / a[k][k];
                for (std::size_t j = k; j <= d; ++j) a[i][j] -= f * a[k][j];
            }
        }
        std::vector<Rat> y(d);
        for (std::size_t i = 0; i < d; ++i) y[i] = a[i][d] / a[i][i];
        return from_coords(n_, std::move(y));
    }

    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) {
        if (b.is_zero()) throw DivisionByZero("cyclotomic division by zero");
        if (b.is_rational()) return a.scaled(1 / b.c_[0]);
        return a * b.inverse();
    }

    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this / o; }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.n_ == b.n_) return a.c_ == b.c_;
        if (a.is_rational() && b.is_rational()) return a.c_[0] == b.c_[0];
        int m = std::lcm(a.n_, b.n_);
        return a.lift(m).c_ == b.lift(m).c_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    // "c0 + c1*w + c2*w^2 (n=N)"
    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (sgn(c_[j]) == 0) continue;
            Rat c = c_[j];
            if (!first) {
                os << (sgn(c) < 0 ? " - " : " + ");
                if (sgn(c) < 0) c = -c;
            }
            first = false;
            if (j == 0) {
                os << c.get_str();
            } else {
                if (c != 1) os << (c == -1 ? std::string("-") : c.get_str() + "*");
                os << "w";
                if (j > 1) os << "^" << j;
            }
        }
        if (first) os << "0";
        os << " (n=" << n_ << ")";
        return os.str();
    }

private:
    int n_;
    std::vector<Rat> c_;
};

inline Cyclotomic abs2(const Cyclotomic& z) { return z * z.conjugate(); }

namespace detail {

struct CellKey {
    long long a, b;
    bool operator==(const CellKey& o) const { return a == o.a && b == o.b; }
};
struct CellHash {
    std::size_t operator()(const CellKey& k) const {
        return std::hash<long long>()(k.a * 1000003LL ^ k.b);
    }
};

inline bool next_vector(std::vector<int>& v, int h) {
    for (auto& x : v) {
        if (x < h) {
            ++x;
            return true;
        }
        x = -h;
    }
    return false;
}

// Integer vector c in [-h,h]^d with |sum c_j w_m^j - v| < tol, or nullopt.
inline std::optional<std::vector<int>> search_coords(std::complex<double> v, int m, int h, double tol,
                                                     double budget) {
    const int d = static_cast<int>(euler_phi(m));
    std::vector<std::complex<double>> w(d);
    for (int j = 0; j < d; ++j) w[j] = std::polar(1.0, 2.0 * M_PI * j / m);
    if (d == 1) {
        double a = std::round(v.real());
        if (std::abs(a) <= h && std::abs(std::complex<double>(a, 0) - v) < tol) return std::vector<int>{int(a)};
        return std::nullopt;
    }
    if (d == 2) {
        double b = std::round(v.imag() / w[1].imag());
        double a = std::round(v.real() - b * w[1].real());
        if (std::abs(a) <= h && std::abs(b) <= h && std::abs(a + b * w[1] - v) < tol)
            return std::vector<int>{int(a), int(b)};
        return std::nullopt;
    }
    const int k1 = d / 2, k2 = d - k1;
    if (std::pow(2.0 * h + 1, k2) > budget) return std::nullopt;
    const double cell = 1e-3;
    auto key = [&](std::complex<double> z) {
        return CellKey{(long long)std::floor(z.real() / cell), (long long)std::floor(z.imag() / cell)};
    };
    std::unordered_map<CellKey, std::vector<std::vector<int>>, CellHash> table;
    std::vector<int> hi(k2, -h);
    do {
        std::complex<double> s = 0;
        for (int j = 0; j < k2; ++j) s += double(hi[j]) * w[k1 + j];
        table[key(s)].push_back(hi);
    } while (next_vector(hi, h));

    std::optional<std::vector<int>> best;
    double best_err = tol;
    std::vector<int> lo(k1, -h);
    do {
        std::complex<double> s = 0;
        for (int j = 0; j < k1; ++j) s += double(lo[j]) * w[j];
        const std::complex<double> r = v - s;
        const CellKey c = key(r);
        for (long long da = -1; da <= 1; ++da)
            for (long long db = -1; db <= 1; ++db) {
                auto it = table.find(CellKey{c.a + da, c.b + db});
                if (it == table.end()) continue;
                for (const auto& cand : it->second) {
                    std::complex<double> t = 0;
                    for (int j = 0; j < k2; ++j) t += double(cand[j]) * w[k1 + j];
                    double err = std::abs(t - r);
                    if (err < best_err) {
                        best_err = err;
                        std::vector<int> full = lo;
                        full.insert(full.end(), cand.begin(), cand.end());
                        best = std::move(full);
                    }
                }
            }
    } while (next_vector(lo, h));
    return best;
}

} // namespace detail

inline constexpr double kRecognizeTolerance = 1e-6;

// Bounded-height recognition, smallest subfield first; result lives in Q(w_n).
inline std::optional<Cyclotomic> try_recognize(std::complex<double> value, int n, long denom, int height) {
    const std::complex<double> target = value * double(denom);
    for (int m : divisors(n)) {
        auto hit = detail::search_coords(target, m, height, kRecognizeTolerance * denom, 4.5e6);
        if (!hit) continue;
        std::vector<Rat> coords;
        for (int c : *hit) coords.emplace_back(c, denom);
        for (auto& q : coords) q.canonicalize();
        return Cyclotomic::from_coords(m, std::move(coords)).lift(n);
    }
    return std::nullopt;
}

inline Cyclotomic recognize(std::complex<double> value, int n, long denom, int height) {
    auto z = try_recognize(value, n, denom, height);
    if (!z) throw NotFound("no cyclotomic within height bound matches the value");
    return *z;
}

} // namespace fqm
