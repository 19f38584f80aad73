#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fqm/cyclo.hpp"
#include "fqm/linalg.hpp"
#include "fqm/perm.hpp"
#include "fqm/poly.hpp"

namespace fqm {

using IntMatrix = Eigen::MatrixXi;
using FormPoly = Poly<Cyclotomic>;

struct BasisForm {
    int index = 0;
    IntMatrix matrix;
};

inline std::vector<BasisForm> basis_forms(const std::vector<Orbital>& orbs) {
    std::vector<BasisForm> out;
    for (const auto& o : orbs) {
        BasisForm b{o.index, IntMatrix::Zero(o.degree, o.degree)};
        for (auto [i, j] : o.pairs) b.matrix(i, j) = 1;
        out.push_back(std::move(b));
    }
    return out;
}

inline std::vector<BasisForm> basis_forms(const PermAction& a) { return basis_forms(orbitals(a)); }

inline std::vector<IntMatrix> matrices(const std::vector<BasisForm>& b) {
    std::vector<IntMatrix> m;
    for (const auto& f : b) m.push_back(f.matrix);
    return m;
}

// alpha(r,p,q): A_p A_q = sum_r alpha(r,p,q) A_r;  gamma = alpha(.,p,q) - alpha(.,q,p).
struct StructureTables {
    int rank = 0;
    std::vector<int> alpha_, gamma_;

    int alpha(int r, int p, int q) const { return alpha_[(r * rank + p) * rank + q]; }
    int gamma(int r, int p, int q) const { return gamma_[(r * rank + p) * rank + q]; }

    std::vector<int> commutator(int p, int q) const {
        std::vector<int> c(rank);
        for (int r = 0; r < rank; ++r) c[r] = gamma(r, p, q);
        return c;
    }
};

inline StructureTables structure_tables(const std::vector<IntMatrix>& basis) {
    const int R = static_cast<int>(basis.size());
    std::vector<std::pair<int, int>> rep(R);
    for (int r = 0; r < R; ++r) {
        bool found = false;
        for (int i = 0; i < basis[r].rows() && !found; ++i)
            for (int j = 0; j < basis[r].cols() && !found; ++j)
                if (basis[r](i, j) != 0) {
                    rep[r] = {i, j};
                    found = true;
                }
        if (!found) throw NotInRing("empty basis form");
    }
    StructureTables t;
    t.rank = R;
    t.alpha_.assign(R * R * R, 0);
    t.gamma_.assign(R * R * R, 0);
    for (int p = 0; p < R; ++p)
        for (int q = 0; q < R; ++q) {
            IntMatrix prod = basis[p] * basis[q];
            IntMatrix back = IntMatrix::Zero(prod.rows(), prod.cols());
            for (int r = 0; r < R; ++r) {
                int a = prod(rep[r].first, rep[r].second);
                t.alpha_[(r * R + p) * R + q] = a;
                back += a * basis[r];
            }
            if (back != prod) throw NotInRing("product escapes the span of the basis");
        }
    for (int r = 0; r < R; ++r)
        for (int p = 0; p < R; ++p)
            for (int q = 0; q < R; ++q)
                t.gamma_[(r * R + p) * R + q] = t.alpha(r, p, q) - t.alpha(r, q, p);
    return t;
}

inline bool is_commutative(const StructureTables& t) {
    for (int v : t.gamma_)
        if (v != 0) return false;
    return true;
}

// det(a_1 A_1 + ... + a_R A_R); with fix_a1 the variable a_1 is set to 1.
inline FormPoly det_poly(const std::vector<IntMatrix>& basis, bool fix_a1 = false) {
    const int R = static_cast<int>(basis.size());
    if (R == 0) throw DimensionMismatch("empty basis");
    const int N = static_cast<int>(basis[0].rows());
    if (R > 8 || N > 16) throw ScaleExceeded("det_poly limited to R <= 8, N <= 16");
    std::vector<std::vector<Poly<Int>>> m(N, std::vector<Poly<Int>>(N, Poly<Int>(R)));
    for (int r = 0; r < R; ++r)
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                if (basis[r](i, j) != 0) {
                    if (fix_a1 && r == 0)
                        m[i][j] = m[i][j] + Poly<Int>::constant(R, Int(basis[r](i, j)));
                    else
                        m[i][j] = m[i][j] + Poly<Int>::variable(R, r, Int(basis[r](i, j)));
                }
    return to_cyclotomic(bareiss_det(std::move(m), R));
}

struct LinearFactor {
    std::vector<Cyclotomic> coeffs; // E = sum coeffs[r] a_r
    int exponent = 1;               // d_k
    int multiplicity = 1;           // m_k = degree of E

    FormPoly poly() const {
        const int R = static_cast<int>(coeffs.size());
        FormPoly p(R);
        for (int r = 0; r < R; ++r) p = p + FormPoly::variable(R, r, coeffs[r]);
        return p;
    }
};

struct FactorizationResult {
    std::vector<LinearFactor> factors;
    int conductor = 1;
    std::uint64_t seed = 0;
    int attempts = 0;

    FormPoly expand(int nvars) const {
        FormPoly p = FormPoly::constant(nvars, Cyclotomic(1));
        for (const auto& f : factors) p = p * f.poly().pow(f.exponent);
        return p;
    }
};

namespace detail {

inline bool commute(const IntMatrix& a, const IntMatrix& b) { return a * b == b * a; }

inline bool matches_det(const FactorizationResult& fr, const FormPoly& det, int R) {
    FormPoly prod = fr.expand(R);
    if (det.is_homogeneous()) return prod == det;
    return prod.substitute(0, Cyclotomic(1)) == det;
}

// Eigenvalue tuples per common eigenvector of commuting matrices.
inline std::vector<std::vector<std::complex<double>>> joint_eigenvalues(const std::vector<IntMatrix>& mats,
                                                                         std::mt19937_64& rng) {
    const int n = static_cast<int>(mats[0].rows());
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& a : mats) M += std::complex<double>(gauss(rng), 0.0) * a.cast<std::complex<double>>();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
    const Eigen::MatrixXcd V = es.eigenvectors();
    const Eigen::MatrixXcd Vi = V.inverse();
    std::vector<std::vector<std::complex<double>>> out(n, std::vector<std::complex<double>>(mats.size()));
    for (std::size_t r = 0; r < mats.size(); ++r) {
        Eigen::MatrixXcd D = Vi * mats[r].cast<std::complex<double>>() * V;
        for (int i = 0; i < n; ++i) out[i][r] = D(i, i);
    }
    return out;
}

inline bool factor_less(const LinearFactor& a, const LinearFactor& b) {
    if (a.exponent != b.exponent) return a.exponent < b.exponent;
    for (std::size_t r = 0; r < a.coeffs.size(); ++r) {
        auto x = a.coeffs[r].to_complex(), y = b.coeffs[r].to_complex();
        if (std::abs(x.real() - y.real()) > 1e-9) return x.real() > y.real();
        if (std::abs(x.imag() - y.imag()) > 1e-9) return x.imag() > y.imag();
    }
    return false;
}

} // namespace detail

// Las Vegas factorization of a commuting basis determinant into linear factors.
inline FactorizationResult factor_det(const std::vector<IntMatrix>& basis, const FormPoly& det, int conductor,
                                      std::uint64_t seed = 1, int retries = 8) {
    const int R = static_cast<int>(basis.size());
    const int N = static_cast<int>(basis[0].rows());
    for (int p = 0; p < R; ++p)
        for (int q = p + 1; q < R; ++q)
            if (!detail::commute(basis[p], basis[q])) throw NonCommutative("basis forms do not commute");
    std::mt19937_64 rng(seed);
    int attempts = 0;
    for (int mult : {1, 2, 3}) {
        const int n = conductor * mult;
        for (int t = 0; t < retries; ++t) {
            ++attempts;
            auto eig = detail::joint_eigenvalues(basis, rng);
            FactorizationResult fr;
            fr.conductor = n;
            fr.seed = seed;
            bool ok = true;
            for (const auto& tuple : eig) {
                std::vector<Cyclotomic> c;
                for (const auto& v : tuple) {
                    auto z = try_recognize(v, n, 1, N);
                    if (!z) {
                        ok = false;
                        break;
                    }
                    c.push_back(*z);
                }
                if (!ok) break;
                auto it = std::find_if(fr.factors.begin(), fr.factors.end(),
                                       [&](const LinearFactor& f) { return f.coeffs == c; });
                if (it == fr.factors.end())
                    fr.factors.push_back(LinearFactor{std::move(c), 1, 1});
                else
                    ++it->exponent;
            }
            if (!ok) continue;
            std::sort(fr.factors.begin(), fr.factors.end(), detail::factor_less);
            fr.attempts = attempts;
            if (detail::matches_det(fr, det, R)) return fr;
        }
    }
    throw FactorizationFailed("no exact factorization after " + std::to_string(attempts) + " attempts");
}

struct Coarsening {
    std::vector<std::vector<int>> groups; // original indices per coarse form
    std::vector<int> merge_map;           // original index -> coarse index
    std::vector<IntMatrix> forms;
};

namespace detail {

inline bool blocks_commute(const StructureTables& t, const std::vector<int>& s, const std::vector<int>& u) {
    std::vector<int> acc(t.rank, 0);
    for (int p : s)
        for (int q : u)
            for (int r = 0; r < t.rank; ++r) acc[r] += t.gamma(r, p, q);
    return std::all_of(acc.begin(), acc.end(), [](int v) { return v == 0; });
}

inline int noncommuting_pairs(const StructureTables& t, const std::vector<std::vector<int>>& g) {
    int c = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j)
            if (!blocks_commute(t, g[i], g[j])) ++c;
    return c;
}

} // namespace detail

// Merges orbital forms until the sums pairwise commute.
inline Coarsening coarsen_commutative(const std::vector<IntMatrix>& basis, const StructureTables& t) {
    const int R = t.rank;
    std::vector<std::vector<int>> groups;
    std::vector<char> diagonal(R, 0);
    for (int r = 0; r < R; ++r) {
        groups.push_back({r});
        for (int i = 0; i < basis[r].rows(); ++i)
            if (basis[r](i, i) != 0) diagonal[r] = 1;
    }
    while (detail::noncommuting_pairs(t, groups) > 0) {
        std::vector<int> movable;
        for (std::size_t g = 0; g < groups.size(); ++g)
            if (!diagonal[groups[g][0]]) movable.push_back(static_cast<int>(g));
        const int m = static_cast<int>(movable.size());
        if (m < 2 || m > 20) throw CoarseningFailed("no commuting coarsening found");
        struct Cand {
            int left, size;
            std::vector<int> members;
        };
        std::optional<Cand> best;
        for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
            int size = __builtin_popcount(mask);
            if (size < 2) continue;
            std::vector<int> members, merged;
            for (int b = 0; b < m; ++b)
                if (mask & (1u << b)) {
                    members.push_back(movable[b]);
                    merged.insert(merged.end(), groups[movable[b]].begin(), groups[movable[b]].end());
                }
            std::sort(merged.begin(), merged.end());
            std::vector<std::vector<int>> next;
            bool valid = true;
            for (std::size_t g = 0; g < groups.size(); ++g) {
                if (std::find(members.begin(), members.end(), static_cast<int>(g)) != members.end()) continue;
                if (!detail::blocks_commute(t, merged, groups[g])) valid = false;
                next.push_back(groups[g]);
            }
            if (!valid) continue;
            next.push_back(merged);
            int left = detail::noncommuting_pairs(t, next);
            std::vector<int> key = merged;
            if (!best || left < best->left || (left == best->left && size < best->size) ||
                (left == best->left && size == best->size && key < best->members))
                best = Cand{left, size, key};
        }
        if (!best) throw CoarseningFailed("no commuting coarsening found");
        std::vector<std::vector<int>> next;
        bool placed = false;
        for (const auto& g : groups) {
            bool inside = std::find(best->members.begin(), best->members.end(), g[0]) != best->members.end();
            if (!inside) {
                next.push_back(g);
            } else if (!placed) {
                next.push_back(best->members);
                placed = true;
            }
        }
        groups = std::move(next);
    }
    Coarsening c;
    c.groups = groups;
    c.merge_map.assign(R, -1);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        IntMatrix s = IntMatrix::Zero(basis[0].rows(), basis[0].cols());
        for (int r : groups[g]) {
            s += basis[r];
            c.merge_map[r] = static_cast<int>(g);
        }
        c.forms.push_back(std::move(s));
    }
    return c;
}

struct InvariantForm {
    int label = 0;
    std::vector<Cyclotomic> x; // x_1 = 1
    Rat normalization;         // C_k = d_k / N
    int dimension = 0;         // d_k

    std::vector<Cyclotomic> coefficients() const {
        std::vector<Cyclotomic> c;
        for (const auto& v : x) c.push_back(v.scaled(normalization));
        return c;
    }
};

inline CMatrix form_matrix(const std::vector<IntMatrix>& basis, const std::vector<Cyclotomic>& coeffs) {
    const std::size_t n = basis[0].rows();
    CMatrix m = cmatrix(n, n);
    for (std::size_t r = 0; r < basis.size(); ++r)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (basis[r](i, j) != 0) m[i][j] += coeffs[r].scaled(Rat(basis[r](i, j)));
    return m;
}

// Component k: x_1 = 1, E_j(x) = 0 for j != k, scaled by d_k / N.
inline std::vector<InvariantForm> invariant_scalar_products(const std::vector<IntMatrix>& basis,
                                                            const FactorizationResult& fr) {
    const int R = static_cast<int>(basis.size());
    const int N = static_cast<int>(basis[0].rows());
    std::vector<InvariantForm> out;
    for (std::size_t k = 0; k < fr.factors.size(); ++k) {
        CMatrix a;
        std::vector<Cyclotomic> b;
        for (std::size_t j = 0; j < fr.factors.size(); ++j) {
            if (j == k) continue;
            const auto& e = fr.factors[j].coeffs;
            a.emplace_back(e.begin() + 1, e.end());
            b.push_back(-e[0]);
        }
        std::vector<Cyclotomic> x{Cyclotomic(1)};
        if (R > 1) {
            auto sol = solve_unique(a, b);
            if (!sol) throw SingularSystem("component " + std::to_string(k) + " has no unique form");
            x.insert(x.end(), sol->begin(), sol->end());
        }
        InvariantForm f;
        f.label = static_cast<int>(k);
        f.x = std::move(x);
        f.dimension = fr.factors[k].exponent;
        f.normalization = Rat(f.dimension, N);
        f.normalization.canonicalize();
        out.push_back(std::move(f));
    }
    return out;
}

struct FrobeniusFactor {
    FormPoly poly;
    int degree = 0;
    int exponent = 0;
};

struct FrobeniusResult {
    FormPoly det;
    std::vector<FrobeniusFactor> factors;
};

namespace detail {

inline CMatrix to_cmatrix(const IntMatrix& m) {
    CMatrix c = cmatrix(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) c[i][j] = Cyclotomic(long(m(i, j)));
    return c;
}

} // namespace detail

// Group determinant factored through the isotypic blocks of the class-sum algebra.
inline FrobeniusResult frobenius_check(std::vector<Permutation> elements, std::uint64_t seed = 1) {
    const int G = static_cast<int>(elements.size());
    if (G > 8) throw ScaleExceeded("frobenius_check limited to groups of order <= 8");
    const int deg = elements[0].degree();
    auto id_it = std::find(elements.begin(), elements.end(), Permutation(deg));
    if (id_it == elements.end()) throw NotInRing("element list lacks the identity");
    std::iter_swap(elements.begin(), id_it);
    auto index_of = [&](const Permutation& p) {
        return static_cast<int>(std::find(elements.begin(), elements.end(), p) - elements.begin());
    };
    std::vector<std::vector<int>> mul(G, std::vector<int>(G));
    for (int a = 0; a < G; ++a)
        for (int b = 0; b < G; ++b) mul[a][b] = index_of(elements[a] * elements[b]);
    std::vector<int> inv(G);
    for (int a = 0; a < G; ++a) inv[a] = index_of(elements[a].inverse());

    // X[h][k] = x_{h^-1 k}
    std::vector<std::vector<Poly<Int>>> X(G, std::vector<Poly<Int>>(G, Poly<Int>(G)));
    for (int h = 0; h < G; ++h)
        for (int k = 0; k < G; ++k) X[h][k] = Poly<Int>::variable(G, mul[inv[h]][k]);
    FrobeniusResult res;
    res.det = to_cyclotomic(bareiss_det(X, G));

    // Conjugacy classes and left multiplication by class sums.
    std::vector<int> cls(G, -1);
    std::vector<std::vector<int>> classes;
    for (int a = 0; a < G; ++a) {
        if (cls[a] >= 0) continue;
        classes.emplace_back();
        for (int g = 0; g < G; ++g) {
            int c = mul[mul[inv[g]][a]][g];
            if (cls[c] < 0) {
                cls[c] = static_cast<int>(classes.size()) - 1;
                classes.back().push_back(c);
            }
        }
    }
    std::vector<IntMatrix> csum;
    for (const auto& c : classes) {
        IntMatrix m = IntMatrix::Zero(G, G);
        for (int g : c)
            for (int h = 0; h < G; ++h) m(mul[g][h], h) += 1;
        csum.push_back(m);
    }
    long expo = 1;
    for (const auto& e : elements) expo = std::lcm(expo, e.order());
    std::mt19937_64 rng(seed);
    auto eig = detail::joint_eigenvalues(csum, rng);
    std::vector<std::vector<Cyclotomic>> tuples;
    std::vector<int> count;
    for (const auto& t : eig) {
        std::vector<Cyclotomic> c;
        for (const auto& v : t) c.push_back(recognize(v, static_cast<int>(expo), 1, G));
        auto it = std::find(tuples.begin(), tuples.end(), c);
        if (it == tuples.end()) {
            tuples.push_back(c);
            count.push_back(1);
        } else {
            ++count[it - tuples.begin()];
        }
    }

    FormPoly product = FormPoly::constant(G, Cyclotomic(1));
    const auto Xc = [&] {
        std::vector<std::vector<FormPoly>> m(G, std::vector<FormPoly>(G));
        for (int h = 0; h < G; ++h)
            for (int k = 0; k < G; ++k) m[h][k] = to_cyclotomic(X[h][k]);
        return m;
    }();
    for (std::size_t k = 0; k < tuples.size(); ++k) {
        CMatrix E = identity_cmatrix(G);
        for (std::size_t j = 0; j < classes.size(); ++j) {
            CMatrix C = detail::to_cmatrix(csum[j]);
            std::vector<Cyclotomic> seen;
            for (const auto& t : tuples) {
                const Cyclotomic& mu = t[j];
                if (mu == tuples[k][j] || std::find(seen.begin(), seen.end(), mu) != seen.end()) continue;
                seen.push_back(mu);
                CMatrix f = C;
                for (int i = 0; i < G; ++i) f[i][i] -= mu;
                E = E * scaled(f, (tuples[k][j] - mu).inverse());
            }
        }
        // Rows of rref(E^T) span the block and are the identity on pivot coordinates.
        CMatrix Et = cmatrix(G, G);
        for (int i = 0; i < G; ++i)
            for (int j = 0; j < G; ++j) Et[j][i] = E[i][j];
        CMatrix work = Et;
        auto piv_rows = rref(work, G);
        const int dk = static_cast<int>(piv_rows.size());
        CMatrix B = cmatrix(G, dk);
        for (int c = 0; c < dk; ++c)
            for (int i = 0; i < G; ++i) B[i][c] = work[c][i];
        CMatrix L = cmatrix(dk, G);
        for (int r = 0; r < dk; ++r) L[r][piv_rows[r]] = Cyclotomic(1);
        std::vector<std::vector<FormPoly>> Mk(dk, std::vector<FormPoly>(dk, FormPoly(G)));
        for (int r = 0; r < dk; ++r)
            for (int c = 0; c < dk; ++c)
                for (int h = 0; h < G; ++h) {
                    if (L[r][h].is_zero()) continue;
                    for (int q = 0; q < G; ++q)
                        if (!B[q][c].is_zero()) Mk[r][c] = Mk[r][c] + Xc[h][q].scaled(L[r][h] * B[q][c]);
                }
        FormPoly Gk = bareiss_det(Mk, G);
        product = product * Gk;
        int d = 1;
        while (d * d < dk) ++d;
        if (d * d != dk) throw FactorizationFailed("isotypic block dimension is not a square");
        FormPoly g = Gk.substitute(0, Cyclotomic(1));
        FormPoly h = g - FormPoly::constant(G, Cyclotomic(1));
        FormPoly f = FormPoly::constant(G, Cyclotomic(1));
        FormPoly hp = FormPoly::constant(G, Cyclotomic(1));
        Rat binom = 1;
        for (int j = 1; j <= d; ++j) {
            binom = binom * (Rat(1, d) - (j - 1)) / j;
            hp = (hp * h).truncated(d);
            f = f + hp.scaled(Cyclotomic(binom));
        }
        FormPoly Fk = f.truncated(d).homogenized(0, d);
        if (Fk.pow(d) != Gk) throw FactorizationFailed("block determinant is not a perfect power");
        res.factors.push_back(FrobeniusFactor{Fk, d, d});
    }
    if (product != res.det) throw FactorizationFailed("block determinants do not multiply to the group determinant");
    return res;
}

} // namespace fqm
