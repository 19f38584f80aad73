#pragma once

#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <vector>

#include "fqm/cyclo.hpp"

namespace fqm {

inline constexpr int kExactTimeCap = 5000;

inline Int factorial(int n) {
    static std::deque<Int> memo{Int(1)};
    static std::mutex mu;
    if (n < 0) throw DomainError("negative factorial");
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(memo.size()) <= n) memo.push_back(memo.back() * Int(static_cast<unsigned long>(memo.size())));
    return memo[n];
}

inline Int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    return factorial(n) / (factorial(k) * factorial(n - k));
}

// Integer coefficients c_tau of A_x^t(w) = sum_tau c_tau w^tau.
inline std::vector<Int> amplitude_coefficients(int t, int x) {
    if (t < 0 || std::abs(x) > t) throw OutOfCone("|x| > t");
    if (t > kExactTimeCap) throw ScaleExceeded("T above exact cap");
    std::vector<Int> c(t + 1, Int(0));
    for (int tau = std::abs(x); tau <= t; ++tau) {
        if ((tau - x) % 2) continue;
        c[tau] = binomial(tau, (tau - x) / 2) * binomial(t, tau);
    }
    return c;
}

inline Cyclotomic amplitude(int M, int T, int x) {
    if (M < 1) throw DomainError("M must be positive");
    auto c = amplitude_coefficients(T, x);
    Cyclotomic s;
    for (int tau = 0; tau <= T; ++tau)
        if (c[tau] != 0) s += Cyclotomic::root(M, tau % M).scaled(Rat(c[tau]));
    return s;
}

struct AmplitudeTable {
    int M = 1, T = 0;
    std::map<int, Cyclotomic> values;  // x in [-T..T]

    Cyclotomic at(int x) const {
        auto it = values.find(x);
        return it == values.end() ? Cyclotomic() : it->second;
    }
};

inline AmplitudeTable amplitude_table(int M, int T) {
    AmplitudeTable t{M, T, {}};
    for (int x = -T; x <= T; ++x) t.values[x] = amplitude(M, T, x);
    return t;
}

struct Source {
    int position = 0;
    int phase = 0;  // exponent of omega_M
};

struct InterferencePoint {
    int x = 0;
    Cyclotomic amplitude;
    Cyclotomic intensity;  // A conj(A)
    bool reachable = false;
    double normalized = 0;
};

// Rows over x in [min pos - T, max pos + T].
inline std::vector<InterferencePoint> interference(int M, int T, const std::vector<Source>& sources) {
    if (sources.empty()) throw DomainError("no sources");
    if (T < 0) throw OutOfCone("negative T");
    auto table = amplitude_table(M, T);
    int lo = sources[0].position, hi = lo;
    for (const auto& s : sources) {
        lo = std::min(lo, s.position);
        hi = std::max(hi, s.position);
    }
    std::vector<InterferencePoint> out;
    double total = 0;
    for (int x = lo - T; x <= hi + T; ++x) {
        InterferencePoint p;
        p.x = x;
        for (const auto& s : sources) {
            int r = x - s.position;
            if (std::abs(r) > T) continue;
            p.reachable = true;
            p.amplitude += table.at(r) * Cyclotomic::root(M, ((s.phase % M) + M) % M);
        }
        p.intensity = p.amplitude * p.amplitude.conjugate();
        total += p.intensity.to_complex().real();
        out.push_back(p);
    }
    for (auto& p : out) p.normalized = total > 0 ? p.intensity.to_complex().real() / total : 0;
    return out;
}

inline std::vector<int> exact_zero_positions(const std::vector<InterferencePoint>& rows) {
    std::vector<int> z;
    for (const auto& p : rows)
        if (p.reachable && p.amplitude.is_zero()) z.push_back(p.x);
    return z;
}

struct DestructiveHit {
    int M = 0, T = 0, d = 0, phase = 0, x = 0;
};

// Two in-phase sources at -d and +d, d in [0..max_d], T in [0..max_T]; d = 0 doubles one source.
inline std::optional<DestructiveHit> destructive_in_family(int M, int max_T, int max_d) {
    for (int T = 0; T <= max_T; ++T)
        for (int d = 0; d <= max_d; ++d) {
            auto z = exact_zero_positions(interference(M, T, {{-d, 0}, {d, 0}}));
            if (!z.empty()) return DestructiveHit{M, T, d, 0, z.front()};
        }
    return std::nullopt;
}

inline std::optional<DestructiveHit> smallest_destructive_order(int max_M, int max_T, int max_d) {
    for (int M = 1; M <= max_M; ++M)
        if (auto h = destructive_in_family(M, max_T, max_d)) return h;
    return std::nullopt;
}

inline void check_point(int x, int t) {
    if (t < 0 || std::abs(x) > t) throw OutOfCone("point outside the light cone");
    if ((t - x) % 2) throw ParityViolation("x and t must have equal parity");
}

// (n1+n2)!/(n1! n2!) p1^n1 (1-p1)^n2
inline Rat binomial_probability(int n1, int n2, const Rat& p1) {
    if (n1 < 0 || n2 < 0) throw OutOfCone("negative occupation");
    if (p1 < 0 || p1 > 1) throw DomainError("p1 outside [0,1]");
    Rat p2 = Rat(1) - p1;
    Rat r(binomial(n1 + n2, n1));
    for (int i = 0; i < n1; ++i) r *= p1;
    for (int i = 0; i < n2; ++i) r *= p2;
    r.canonicalize();
    return r;
}

// Probability that a path from (0,0) to (X,T) passes through (x,t); no dependence on p1.
inline Rat conditional_probability(int x, int t, int X, int T) {
    check_point(X, T);
    check_point(x, t);
    check_point(X - x, T - t);
    const int a = (t - x) / 2, b = (t + x) / 2;
    const int c = (T - t - (X - x)) / 2, d = (T - t + (X - x)) / 2;
    Int num = factorial(t) * factorial(T - t) * factorial((T - X) / 2) * factorial((T + X) / 2);
    Int den = factorial(a) * factorial(b) * factorial(c) * factorial(d) * factorial(T);
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline double continuum_approx(double x, double t, double v) {
    if (std::abs(v) >= 1) throw DomainError("|v| must be below 1");
    if (t <= 0) throw DomainError("t must be positive");
    const double g = 1 - v * v;
    const double u = (x - v * t) / std::sqrt(g);
    return std::sqrt(2 / (std::numbers::pi * t)) / std::sqrt(g) * std::exp(-u * u / (2 * t));
}

inline double approx_conditional(double x, double t, double X, double T, double v) {
    if (std::abs(v) >= 1) throw DomainError("|v| must be below 1");
    if (!(t > 0 && t < T)) throw DomainError("need 0 < t < T");
    const double g = 1 - v * v;
    const double q = g * t * T * (T - t);
    const double e = X * t - x * T;
    return T / std::sqrt(std::numbers::pi / 2 * q) * std::exp(-e * e / (2 * q));
}

struct SliceMaximum {
    int t = 0;
    Rat value;
    std::vector<int> argmax;
};

// Per-time-slice maxima of the exact conditional over reachable x.
inline std::vector<SliceMaximum> exact_slice_maxima(int X, int T) {
    check_point(X, T);
    std::vector<SliceMaximum> out;
    for (int t = 1; t < T; ++t) {
        SliceMaximum s{t, Rat(-1), {}};
        for (int x = -t; x <= t; x += 2) {
            if (std::abs(X - x) > T - t) continue;
            Rat p = conditional_probability(x, t, X, T);
            if (p > s.value) {
                s.value = p;
                s.argmax = {x};
            } else if (p == s.value) {
                s.argmax.push_back(x);
            }
        }
        out.push_back(s);
    }
    return out;
}

// Grid points in [-t, t] attaining the maximum of the continuum conditional.
inline std::vector<double> approx_slice_argmax(double t, double X, double T, double v, double step) {
    std::vector<double> arg;
    double best = -1;
    const long n = std::lround(2 * t / step);
    for (long i = 0; i <= n; ++i) {
        double x = -t + i * step;
        double p = approx_conditional(x, t, X, T, v);
        if (p > best * (1 + 1e-12)) {
            best = p;
            arg = {x};
        } else if (p >= best * (1 - 1e-12)) {
            arg.push_back(x);
        }
    }
    return arg;
}

} // namespace fqm
