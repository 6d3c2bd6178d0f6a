#pragma once

// Abstract structure theory of the universal isometry algebra, over exact
// rationals: structure constants in the frozen basis, Jacobi and
// antisymmetry checks, adjoint traces, lower central series ranks, the
// grading element, and subalgebra/ideal tests. Everything here is exact;
// the numeric bracket expansions elsewhere are compared against this table.

#include <stdexcept>
#include <vector>

#include "cubic.hpp"
#include "linalg.hpp"
#include "rational.hpp"

namespace qmap {

// basis: D, Xh, Xf, P_0..P_n, X^0..X^n, V_1..V_n, Z  (dim 3n+6)
class UniversalAlgebra {
 public:
  explicit UniversalAlgebra(const CubicForm& f) : n_(f.n()), dim_(3 * f.n() + 6) {
    C_.assign(static_cast<std::size_t>(dim_) * dim_ * dim_, Rat(0));
    Rat half(1, 2), one(1), two(2);

    auto set = [&](int i, int j, int m, Rat val) {
      c(i, j, m) = val;
      c(j, i, m) = Rat(0) - val;
    };

    // sl2 triple
    set(iXh(), iP(0), iP(0), Rat(-2));      // [Xh, Xe] = -2 Xe
    set(iXh(), iXf(), iXf(), two);          // [Xh, Xf] = 2 Xf
    set(iP(0), iXf(), iXh(), Rat(0) - one); // [Xe, Xf] = -Xh

    // dilations
    for (int i = 0; i <= n_; ++i) {
      set(iP(i), iD(), iP(i), half);
      set(iXup(i), iD(), iXup(i), half);
    }
    set(iZ(), iD(), iZ(), one);
    set(iD(), iXf(), iXf(), half);

    // Heisenberg part
    for (int i = 0; i <= n_; ++i) set(iP(i), iXup(i), iZ(), Rat(-2));

    // Xh weights on the nilpotent part
    for (int a = 1; a <= n_; ++a) {
      set(iP(a), iXh(), iP(a), one);
      set(iXh(), iV(a), iV(a), one);
    }
    set(iXh(), iXup(0), iXup(0), one);
    set(iZ(), iXh(), iZ(), one);

    // V_a brackets
    for (int a = 1; a <= n_; ++a) {
      set(iP(0), iV(a), iP(a), one);
      set(iV(a), iXup(a), iXup(0), one);
      set(iXf(), iP(a), iV(a), one);
      for (int b = 1; b <= n_; ++b)
        for (int cc = 1; cc <= n_; ++cc) {
          double k = f.k(a - 1, b - 1, cc - 1);
          if (k != 0.0) c(iV(a), iP(b), iXup(cc)) = rat_from_double(k);
        }
    }
    for (int a = 1; a <= n_; ++a)
      for (int b = 1; b <= n_; ++b)
        for (int cc = 1; cc <= n_; ++cc) {
          Rat v = c(iV(a), iP(b), iXup(cc));
          if (!(v == Rat(0))) c(iP(b), iV(a), iXup(cc)) = Rat(0) - v;
        }

    set(iZ(), iXf(), iXup(0), half);
  }

  int n() const { return n_; }
  int dim() const { return dim_; }

  int iD() const { return 0; }
  int iXh() const { return 1; }
  int iXf() const { return 2; }
  int iP(int i) const { return 3 + i; }            // i = 0..n, P_0 = Xe
  int iXup(int i) const { return 3 + (n_ + 1) + i; }
  int iV(int a) const { return 3 + 2 * (n_ + 1) + (a - 1); }  // a = 1..n
  int iZ() const { return dim_ - 1; }

  Rat& c(int i, int j, int m) {
    return C_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + m];
  }
  const Rat& c(int i, int j, int m) const {
    return C_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + m];
  }

  std::vector<Rat> bracket(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
    std::vector<Rat> out(dim_, Rat(0));
    for (int i = 0; i < dim_; ++i) {
      if (x[i] == Rat(0)) continue;
      for (int j = 0; j < dim_; ++j) {
        if (y[j] == Rat(0)) continue;
        for (int m = 0; m < dim_; ++m) {
          const Rat& s = c(i, j, m);
          if (!(s == Rat(0))) out[m] = out[m] + x[i] * y[j] * s;
        }
      }
    }
    return out;
  }

  std::vector<Rat> basis_vector(int i) const {
    std::vector<Rat> e(dim_, Rat(0));
    e[i] = Rat(1);
    return e;
  }

  bool antisymmetric() const {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        for (int m = 0; m < dim_; ++m)
          if (!(c(i, j, m) + c(j, i, m) == Rat(0))) return false;
    return true;
  }

  // [[ei,ej],em] + [[ej,em],ei] + [[em,ei],ej] = 0, exact
  bool jacobi() const {
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j)
        for (int m = j + 1; m < dim_; ++m) {
          std::vector<Rat> total(dim_, Rat(0));
          accumulate_double_bracket(i, j, m, total);
          accumulate_double_bracket(j, m, i, total);
          accumulate_double_bracket(m, i, j, total);
          for (int s = 0; s < dim_; ++s)
            if (!(total[s] == Rat(0))) return false;
        }
    return true;
  }

  MatT<Rat> ad(int i) const {
    MatT<Rat> A(dim_, dim_);
    for (int j = 0; j < dim_; ++j)
      for (int m = 0; m < dim_; ++m) A(m, j) = c(i, j, m);
    return A;
  }

  MatT<Rat> ad(const std::vector<Rat>& x) const {
    MatT<Rat> A(dim_, dim_);
    for (int i = 0; i < dim_; ++i) {
      if (x[i] == Rat(0)) continue;
      for (int j = 0; j < dim_; ++j)
        for (int m = 0; m < dim_; ++m) A(m, j) = A(m, j) + x[i] * c(i, j, m);
    }
    return A;
  }

  Rat trace_ad(const std::vector<Rat>& x) const {
    MatT<Rat> A = ad(x);
    Rat tr(0);
    for (int i = 0; i < dim_; ++i) tr = tr + A(i, i);
    return tr;
  }

 private:
  void accumulate_double_bracket(int i, int j, int m, std::vector<Rat>& total) const {
    for (int s = 0; s < dim_; ++s) {
      const Rat& cij = c(i, j, s);
      if (cij == Rat(0)) continue;
      for (int u = 0; u < dim_; ++u) {
        const Rat& csm = c(s, m, u);
        if (!(csm == Rat(0))) total[u] = total[u] + cij * csm;
      }
    }
  }

  int n_, dim_;
  std::vector<Rat> C_;
};

// exact rank of a rational matrix by fraction-free-ish Gaussian elimination
inline int rat_rank(MatT<Rat> M) {
  int r = 0;
  for (int col = 0; col < M.cols && r < M.rows; ++col) {
    int piv = -1;
    for (int i = r; i < M.rows; ++i)
      if (!(M(i, col) == Rat(0))) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < M.cols; ++j) std::swap(M(r, j), M(piv, j));
    for (int i = r + 1; i < M.rows; ++i) {
      if (M(i, col) == Rat(0)) continue;
      Rat factor = M(i, col) / M(r, col);
      for (int j = col; j < M.cols; ++j) M(i, j) = M(i, j) - factor * M(r, j);
    }
    ++r;
  }
  return r;
}

// A subspace is a list of rational coordinate vectors; rank deduplicates.
using RatSpan = std::vector<std::vector<Rat>>;

inline int span_dim(const RatSpan& S, int dim) {
  if (S.empty()) return 0;
  MatT<Rat> M(static_cast<int>(S.size()), dim);
  for (std::size_t i = 0; i < S.size(); ++i)
    for (int j = 0; j < dim; ++j) M(static_cast<int>(i), j) = S[i][j];
  return rat_rank(M);
}

inline RatSpan span_bracket(const UniversalAlgebra& g, const RatSpan& A, const RatSpan& B) {
  RatSpan out;
  for (const auto& x : A)
    for (const auto& y : B) out.push_back(g.bracket(x, y));
  return out;
}

// consecutive dims of g1 = S, g_{k+1} = [S, g_k], until it stabilizes at 0
inline std::vector<int> lower_central_series_dims(const UniversalAlgebra& g, const RatSpan& S) {
  std::vector<int> dims;
  RatSpan cur = S;
  dims.push_back(span_dim(cur, g.dim()));
  for (int iter = 0; iter < g.dim() + 2; ++iter) {
    cur = span_bracket(g, S, cur);
    int d = span_dim(cur, g.dim());
    dims.push_back(d);
    if (d == 0) break;
  }
  return dims;
}

// is [A, B] contained in B?  (A = B gives the subalgebra test)
inline bool bracket_into(const UniversalAlgebra& g, const RatSpan& A, const RatSpan& B) {
  int db = span_dim(B, g.dim());
  RatSpan joint = B;
  for (const auto& x : A)
    for (const auto& y : B) joint.push_back(g.bracket(x, y));
  return span_dim(joint, g.dim()) == db;
}

// canonical subspaces
inline RatSpan span_nilradical(const UniversalAlgebra& g) {
  RatSpan S;
  for (int a = 1; a <= g.n(); ++a) S.push_back(g.basis_vector(g.iV(a)));
  for (int a = 1; a <= g.n(); ++a) S.push_back(g.basis_vector(g.iP(a)));
  for (int i = 0; i <= g.n(); ++i) S.push_back(g.basis_vector(g.iXup(i)));
  S.push_back(g.basis_vector(g.iZ()));
  return S;
}

inline RatSpan span_heisenberg(const UniversalAlgebra& g) {
  RatSpan S;
  for (int a = 1; a <= g.n(); ++a) S.push_back(g.basis_vector(g.iP(a)));
  for (int i = 0; i <= g.n(); ++i) S.push_back(g.basis_vector(g.iXup(i)));
  S.push_back(g.basis_vector(g.iZ()));
  return S;
}

inline RatSpan span_sl2(const UniversalAlgebra& g) {
  return {g.basis_vector(g.iP(0)), g.basis_vector(g.iXh()), g.basis_vector(g.iXf())};
}

inline RatSpan span_v(const UniversalAlgebra& g) {
  RatSpan S;
  for (int a = 1; a <= g.n(); ++a) S.push_back(g.basis_vector(g.iV(a)));
  return S;
}

inline RatSpan span_full(const UniversalAlgebra& g) {
  RatSpan S;
  for (int i = 0; i < g.dim(); ++i) S.push_back(g.basis_vector(i));
  return S;
}

// D' = 4D - Xh grades the nilradical with integer eigenvalues
inline std::vector<Rat> grading_element(const UniversalAlgebra& g) {
  std::vector<Rat> x(g.dim(), Rat(0));
  x[g.iD()] = Rat(4);
  x[g.iXh()] = Rat(-1);
  return x;
}

// multiplicity of eigenvalue lambda of ad(x) = dim - rank(ad(x) - lambda I), exact
inline int eigen_multiplicity(const UniversalAlgebra& g, const std::vector<Rat>& x, Rat lambda) {
  MatT<Rat> A = g.ad(x);
  for (int i = 0; i < g.dim(); ++i) A(i, i) = A(i, i) - lambda;
  return g.dim() - rat_rank(A);
}

// Are all structure constants of the nilradical in the Malcev basis
// (P_a, V_a, X^0, X^a, Z) integers?  True exactly when k is integral.
inline bool malcev_integral(const UniversalAlgebra& g) {
  std::vector<int> idx;
  for (int a = 1; a <= g.n(); ++a) idx.push_back(g.iP(a));
  for (int a = 1; a <= g.n(); ++a) idx.push_back(g.iV(a));
  idx.push_back(g.iXup(0));
  for (int a = 1; a <= g.n(); ++a) idx.push_back(g.iXup(a));
  idx.push_back(g.iZ());
  for (int i : idx)
    for (int j : idx) {
      auto br = g.bracket(g.basis_vector(i), g.basis_vector(j));
      for (int m = 0; m < g.dim(); ++m)
        if (!(br[m] == Rat(0)) && br[m].d != 1) return false;
    }
  return true;
}

}  // namespace qmap
