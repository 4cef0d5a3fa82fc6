#include "catkit/chaincx.hpp"

#include <algorithm>

#include "catkit/errors.hpp"

namespace catkit {

namespace {

int md(long long v, int p) { return static_cast<int>(((v % p) + p) % p); }

struct Rref {
  Matrix m;
  std::vector<int> pivots;  // pivot column per row
};

Rref rref(Matrix m, int p) {
  Rref r;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int i = row; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
    int inv = inverse_mod(m.at(row, col), p);
    for (int j = 0; j < m.cols; ++j) m.at(row, j) = md(static_cast<long long>(m.at(row, j)) * inv, p);
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      int factor = m.at(i, col);
      for (int j = 0; j < m.cols; ++j) m.at(i, j) = md(m.at(i, j) - static_cast<long long>(factor) * m.at(row, j), p);
    }
    r.pivots.push_back(col);
    ++row;
  }
  r.m = std::move(m);
  return r;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

Matrix zero(int r, int c) { return Matrix(r, c); }

bool is_zero(const Matrix& m) {
  return std::all_of(m.a.begin(), m.a.end(), [](int v) { return v == 0; });
}

Matrix hconcat(const Matrix& x, const Matrix& y) {
  if (x.rows != y.rows) throw InternalError("hconcat: row mismatch");
  Matrix r(x.rows, x.cols + y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
    for (int j = 0; j < y.cols; ++j) r.at(i, x.cols + j) = y.at(i, j);
  }
  return r;
}

Matrix block_sum(const Matrix& x, const Matrix& y) {
  Matrix r(x.rows + y.rows, x.cols + y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
  for (int i = 0; i < y.rows; ++i)
    for (int j = 0; j < y.cols; ++j) r.at(x.rows + i, x.cols + j) = y.at(i, j);
  return r;
}

// Projection onto V / span(columns of m) and a section of it.
struct Cokernel {
  Matrix proj;
  Matrix sect;
};

Cokernel cokernel(const Matrix& m, int n, int p) {
  Rref r = rref(transpose(m), p);
  std::vector<bool> pivot(n, false);
  for (int c : r.pivots) pivot[c] = true;
  std::vector<int> free;
  for (int j = 0; j < n; ++j)
    if (!pivot[j]) free.push_back(j);
  int q = static_cast<int>(free.size());
  Cokernel ck{Matrix(q, n), Matrix(n, q)};
  for (int k = 0; k < q; ++k) ck.sect.at(free[k], k) = 1;
  for (int j = 0; j < n; ++j) {
    // reduce e_j modulo the row space
    std::vector<int> v(n, 0);
    v[j] = 1;
    for (std::size_t row = 0; row < r.pivots.size(); ++row) {
      int c = r.pivots[row];
      if (v[c] == 0) continue;
      int factor = v[c];
      for (int t = 0; t < n; ++t) v[t] = md(v[t] - static_cast<long long>(factor) * r.m.at(static_cast<int>(row), t), p);
    }
    for (int k = 0; k < q; ++k) ck.proj.at(k, j) = v[free[k]];
  }
  return ck;
}

void check_prime(int p) {
  if (!is_prime(p)) throw InputError("not a prime: " + std::to_string(p));
}

}  // namespace

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

int inverse_mod(int a, int p) {
  a = md(a, p);
  if (a == 0) throw InputError("inverse of zero mod " + std::to_string(p));
  long long r = 1, b = a;
  for (int e = p - 2; e > 0; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<int>(r);
}

Matrix mat_mul(const Matrix& x, const Matrix& y, int p) {
  if (x.cols != y.rows) throw InternalError("mat_mul: shape mismatch " + std::to_string(x.cols) + " vs " + std::to_string(y.rows));
  Matrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int t = 0; t < x.cols; ++t) {
      int v = x.at(i, t);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j) r.at(i, j) = static_cast<int>((r.at(i, j) + static_cast<long long>(v) * y.at(t, j)) % p);
    }
  return r;
}

Matrix mat_add(const Matrix& x, const Matrix& y, int p) {
  if (x.rows != y.rows || x.cols != y.cols) throw InternalError("mat_add: shape mismatch");
  Matrix r = x;
  for (std::size_t k = 0; k < r.a.size(); ++k) r.a[k] = (r.a[k] + y.a[k]) % p;
  return r;
}

Matrix mat_scale(const Matrix& x, int s, int p) {
  Matrix r = x;
  for (int& v : r.a) v = md(static_cast<long long>(v) * s, p);
  return r;
}

int mat_rank(const Matrix& m, int p) { return static_cast<int>(rref(m, p).pivots.size()); }

Matrix kernel_basis(const Matrix& m, int p) {
  Rref r = rref(m, p);
  std::vector<bool> pivot(m.cols, false);
  for (int c : r.pivots) pivot[c] = true;
  std::vector<int> free;
  for (int j = 0; j < m.cols; ++j)
    if (!pivot[j]) free.push_back(j);
  Matrix k(m.cols, static_cast<int>(free.size()));
  for (std::size_t f = 0; f < free.size(); ++f) {
    k.at(free[f], static_cast<int>(f)) = 1;
    for (std::size_t row = 0; row < r.pivots.size(); ++row)
      k.at(r.pivots[row], static_cast<int>(f)) = md(-r.m.at(static_cast<int>(row), free[f]), p);
  }
  return k;
}

Matrix image_basis(const Matrix& m, int p) {
  Rref r = rref(m, p);
  Matrix b(m.rows, static_cast<int>(r.pivots.size()));
  for (std::size_t k = 0; k < r.pivots.size(); ++k)
    for (int i = 0; i < m.rows; ++i) b.at(i, static_cast<int>(k)) = m.at(i, r.pivots[k]);
  return b;
}

Matrix left_inverse(const Matrix& m, int p) {
  Rref rows = rref(transpose(m), p);
  if (static_cast<int>(rows.pivots.size()) != m.cols) throw InputError("left_inverse: matrix does not have full column rank");
  int c = m.cols;
  // [E_I | I] -> [I | E_I^{-1}]
  Matrix aug(c, 2 * c);
  for (int k = 0; k < c; ++k) {
    for (int j = 0; j < c; ++j) aug.at(k, j) = m.at(rows.pivots[k], j);
    aug.at(k, c + k) = 1;
  }
  Rref inv = rref(aug, p);
  // aug rows are the chosen rows of m; inverse maps them back
  Matrix l(c, m.rows);
  for (int i = 0; i < c; ++i)
    for (int k = 0; k < c; ++k) l.at(i, rows.pivots[k]) = inv.m.at(i, c + k);
  return l;
}

Matrix block_diagonal(int n, const Matrix& m) {
  Matrix r(n * m.rows, n * m.cols);
  for (int b = 0; b < n; ++b)
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) r.at(b * m.rows + i, b * m.cols + j) = m.at(i, j);
  return r;
}

// ---- complexes ------------------------------------------------------------------

Matrix FiniteComplex::diff(int k) const {
  if (k >= lo && k <= hi && static_cast<std::size_t>(k - lo) < d.size()) return d[k - lo];
  return zero(dim(k + 1), dim(k));
}

FiniteComplex make_complex(int p, int lo, std::vector<int> dims, std::vector<Matrix> d) {
  check_prime(p);
  if (dims.empty()) throw InputError("complex: empty degree window");
  FiniteComplex c;
  c.p = p;
  c.lo = lo;
  c.hi = lo + static_cast<int>(dims.size()) - 1;
  c.dims = std::move(dims);
  if (d.size() > c.dims.size()) throw InputError("complex: more differentials than degrees");
  c.d = std::move(d);
  for (int k = c.lo + static_cast<int>(c.d.size()); k <= c.hi; ++k) c.d.push_back(zero(c.dim(k + 1), c.dim(k)));
  return c;
}

FiniteComplex zero_complex(int p, int lo, int hi) { return make_complex(p, lo, std::vector<int>(hi - lo + 1, 0), {}); }

ValidationReport validate_complex(const FiniteComplex& c) {
  ValidationReport r;
  if (!is_prime(c.p)) r.add("characteristic " + std::to_string(c.p) + " is not prime");
  if (c.hi < c.lo || c.dims.size() != static_cast<std::size_t>(c.hi - c.lo + 1) || c.d.size() != c.dims.size()) {
    r.add("degree window does not match the data");
    return r;
  }
  if (!r.ok()) return r;
  for (int k = c.lo; k <= c.hi; ++k) {
    if (c.dim(k) < 0) r.add("negative dimension in degree " + std::to_string(k));
    const Matrix& m = c.d[k - c.lo];
    if (m.rows != c.dim(k + 1) || m.cols != c.dim(k) || m.a.size() != static_cast<std::size_t>(m.rows) * m.cols) {
      r.add("differential in degree " + std::to_string(k) + " has the wrong shape");
      continue;
    }
    for (int v : m.a)
      if (v < 0 || v >= c.p) {
        r.add("differential in degree " + std::to_string(k) + " has an entry outside F_" + std::to_string(c.p));
        break;
      }
  }
  if (!r.ok()) return r;
  for (int k = c.lo; k < c.hi; ++k)
    if (!is_zero(mat_mul(c.diff(k + 1), c.diff(k), c.p))) r.add("d∘d ≠ 0 from degree " + std::to_string(k));
  return r;
}

FiniteComplex identity_cone(int p) { return make_complex(p, -1, {1, 1}, {Matrix::identity(1)}); }

ValidationReport validate_complex_map(const ComplexMap& f) {
  ValidationReport r;
  r.merge(validate_complex(f.src), "source: ");
  r.merge(validate_complex(f.tgt), "target: ");
  if (!r.ok()) return r;
  if (f.src.p != f.tgt.p) r.add("characteristics differ");
  if (f.src.lo != f.tgt.lo || f.src.hi != f.tgt.hi) r.add("degree windows differ");
  if (f.f.size() != f.src.dims.size()) r.add("wrong number of components");
  if (!r.ok()) return r;
  const int p = f.src.p;
  for (int k = f.src.lo; k <= f.src.hi; ++k) {
    const Matrix& m = f.f[k - f.src.lo];
    if (m.rows != f.tgt.dim(k) || m.cols != f.src.dim(k)) {
      r.add("component in degree " + std::to_string(k) + " has the wrong shape");
      continue;
    }
    if (k < f.src.hi) {
      const Matrix& next = f.f[k + 1 - f.src.lo];
      if (next.rows == f.tgt.dim(k + 1) && next.cols == f.src.dim(k + 1) &&
          mat_mul(f.tgt.diff(k), m, p) != mat_mul(next, f.src.diff(k), p))
        r.add("does not commute with d in degree " + std::to_string(k));
    }
  }
  return r;
}

ComplexMap identity_map(const FiniteComplex& c) {
  ComplexMap f{c, c, {}};
  for (int k = c.lo; k <= c.hi; ++k) f.f.push_back(Matrix::identity(c.dim(k)));
  return f;
}

ComplexMap zero_map(const FiniteComplex& c, const FiniteComplex& d) {
  ComplexMap f{c, d, {}};
  for (int k = c.lo; k <= c.hi; ++k) f.f.push_back(zero(d.dim(k), c.dim(k)));
  return f;
}

ComplexMap to_zero(const FiniteComplex& c) { return zero_map(c, zero_complex(c.p, c.lo, c.hi)); }
ComplexMap from_zero(const FiniteComplex& c) { return zero_map(zero_complex(c.p, c.lo, c.hi), c); }

ComplexMap compose(const ComplexMap& g, const ComplexMap& f) {
  ComplexMap h{f.src, g.tgt, {}};
  for (std::size_t k = 0; k < f.f.size(); ++k) h.f.push_back(mat_mul(g.f[k], f.f[k], f.src.p));
  return h;
}

std::vector<int> homology_dims(const FiniteComplex& c) {
  std::vector<int> h;
  for (int k = c.lo; k <= c.hi; ++k) h.push_back(c.dim(k) - mat_rank(c.diff(k), c.p) - mat_rank(c.diff(k - 1), c.p));
  return h;
}

bool is_quasi_iso(const ComplexMap& f) {
  const int p = f.src.p;
  for (int k = f.src.lo; k <= f.src.hi; ++k) {
    Matrix z = kernel_basis(f.src.diff(k), p);
    int hc = z.cols - mat_rank(f.src.diff(k - 1), p);
    Matrix b = image_basis(f.tgt.diff(k - 1), p);
    int hd = f.tgt.dim(k) - mat_rank(f.tgt.diff(k), p) - b.cols;
    if (hc != hd) return false;
    Matrix fz = mat_mul(f.f[k - f.src.lo], z, p);
    if (mat_rank(hconcat(fz, b), p) - b.cols != hc) return false;
  }
  return true;
}

bool is_degreewise_epi(const ComplexMap& f) {
  for (int k = f.src.lo; k <= f.src.hi; ++k)
    if (mat_rank(f.f[k - f.src.lo], f.src.p) != f.tgt.dim(k)) return false;
  return true;
}

bool is_degreewise_mono(const ComplexMap& f) {
  for (int k = f.src.lo; k <= f.src.hi; ++k)
    if (mat_rank(f.f[k - f.src.lo], f.src.p) != f.src.dim(k)) return false;
  return true;
}

FiniteComplex rewindow(const FiniteComplex& c, int lo, int hi) {
  for (int k = c.lo; k <= c.hi; ++k)
    if ((k < lo || k > hi) && c.dim(k) != 0) throw InputError("rewindow: nonzero component in degree " + std::to_string(k));
  std::vector<int> dims;
  std::vector<Matrix> d;
  for (int k = lo; k <= hi; ++k) {
    dims.push_back(c.dim(k));
    d.push_back(c.diff(k));
  }
  return make_complex(c.p, lo, std::move(dims), std::move(d));
}

FiniteComplex direct_sum(const FiniteComplex& c, const FiniteComplex& d) {
  if (c.p != d.p) throw InputError("direct_sum: characteristics differ");
  int lo = std::min(c.lo, d.lo), hi = std::max(c.hi, d.hi);
  std::vector<int> dims;
  std::vector<Matrix> ds;
  for (int k = lo; k <= hi; ++k) {
    dims.push_back(c.dim(k) + d.dim(k));
    ds.push_back(block_sum(c.diff(k), d.diff(k)));
  }
  return make_complex(c.p, lo, std::move(dims), std::move(ds));
}

ComplexMap direct_sum(const ComplexMap& f, const ComplexMap& g) {
  ComplexMap h{direct_sum(f.src, g.src), direct_sum(f.tgt, g.tgt), {}};
  for (int k = h.src.lo; k <= h.src.hi; ++k) {
    Matrix a = k >= f.src.lo && k <= f.src.hi ? f.f[k - f.src.lo] : zero(f.tgt.dim(k), f.src.dim(k));
    Matrix b = k >= g.src.lo && k <= g.src.hi ? g.f[k - g.src.lo] : zero(g.tgt.dim(k), g.src.dim(k));
    h.f.push_back(block_sum(a, b));
  }
  return h;
}

FiniteComplex naive_truncate(const FiniteComplex& c) {
  int lo = std::max(c.lo, 0), hi = std::max(c.hi, 0);
  std::vector<int> dims;
  std::vector<Matrix> d;
  for (int k = lo; k <= hi; ++k) {
    dims.push_back(c.dim(k));
    d.push_back(c.diff(k));
  }
  return make_complex(c.p, lo, std::move(dims), std::move(d));
}

ComplexMap naive_truncate(const ComplexMap& f) {
  ComplexMap g{naive_truncate(f.src), naive_truncate(f.tgt), {}};
  for (int k = g.src.lo; k <= g.src.hi; ++k)
    g.f.push_back(k >= f.src.lo && k <= f.src.hi ? f.f[k - f.src.lo] : zero(f.tgt.dim(k), f.src.dim(k)));
  return g;
}

namespace {

Cokernel degree_zero_cokernel(const FiniteComplex& c) { return cokernel(c.diff(-1), c.dim(0), c.p); }

}  // namespace

FiniteComplex homotopy_truncate(const FiniteComplex& c) {
  FiniteComplex t = naive_truncate(c);
  if (t.lo > 0 || c.lo >= 0) return t;
  Cokernel ck = degree_zero_cokernel(c);
  t.dims[0] = ck.proj.rows;
  t.d[0] = mat_mul(c.diff(0), ck.sect, c.p);
  return t;
}

ComplexMap homotopy_truncate(const ComplexMap& f) {
  ComplexMap g = naive_truncate(f);
  g.src = homotopy_truncate(f.src);
  g.tgt = homotopy_truncate(f.tgt);
  if (f.src.lo < 0) {
    Cokernel cs = degree_zero_cokernel(f.src), ct = degree_zero_cokernel(f.tgt);
    g.f[0] = mat_mul(mat_mul(ct.proj, g.f[0], f.src.p), cs.sect, f.src.p);
  }
  return g;
}

TruncationCounterexample reproduce_truncation_counterexample(int p) {
  check_prime(p);
  TruncationCounterexample r;
  r.p = p;
  ComplexMap f = to_zero(identity_cone(p));
  if (!validate_complex_map(f).ok()) throw InternalError("truncation counterexample: invalid map");
  r.epi = is_degreewise_epi(f);
  r.quasi_iso = is_quasi_iso(f);
  r.acyclic_fib = r.epi && r.quasi_iso;
  ComplexMap fr = naive_truncate(f);
  r.FR_quasi_iso = is_quasi_iso(fr);
  r.FR_acyclic_fib = is_degreewise_epi(fr) && r.FR_quasi_iso;
  r.FR_source_dims = fr.src.dims;
  ComplexMap l = homotopy_truncate(f);
  r.L_quasi_iso = is_quasi_iso(l);
  r.L_source_dims = l.src.dims;
  return r;
}

// ---- algebras -------------------------------------------------------------------

std::vector<int> FiniteAlgebra::multiply(const std::vector<int>& x, const std::vector<int>& y) const {
  std::vector<int> z(dim, 0);
  for (int i = 0; i < dim; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < dim; ++j) {
      if (y[j] == 0) continue;
      long long xy = static_cast<long long>(x[i]) * y[j] % p;
      for (int k = 0; k < dim; ++k) z[k] = static_cast<int>((z[k] + xy * coeff(i, j, k)) % p);
    }
  }
  return z;
}

namespace {

std::vector<int> basis_vector(int dim, int i) {
  std::vector<int> v(dim, 0);
  v[i] = 1;
  return v;
}

}  // namespace

ValidationReport validate_algebra(const FiniteAlgebra& a) {
  ValidationReport r;
  if (!is_prime(a.p)) r.add("characteristic is not prime");
  if (a.dim < 1 || a.c.size() != static_cast<std::size_t>(a.dim) * a.dim * a.dim || a.unit.size() != static_cast<std::size_t>(a.dim)) {
    r.add("structure constants have the wrong shape");
    return r;
  }
  for (int v : a.c)
    if (v < 0 || v >= a.p) {
      r.add("structure constant outside the field");
      return r;
    }
  for (int i = 0; i < a.dim; ++i) {
    auto ei = basis_vector(a.dim, i);
    if (a.multiply(a.unit, ei) != ei || a.multiply(ei, a.unit) != ei) r.add("unit law fails at basis element " + std::to_string(i));
    for (int j = 0; j < a.dim; ++j)
      for (int k = 0; k < a.dim; ++k) {
        auto ej = basis_vector(a.dim, j), ek = basis_vector(a.dim, k);
        if (a.multiply(a.multiply(ei, ej), ek) != a.multiply(ei, a.multiply(ej, ek)))
          r.add("associativity fails at (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")");
      }
  }
  return r;
}

FiniteAlgebra truncated_polynomial(int p, int vars) {
  check_prime(p);
  if (vars < 0 || vars > 4) throw InputError("truncated_polynomial: 0 to 4 variables");
  FiniteAlgebra a;
  a.p = p;
  a.dim = 1 << vars;
  a.c.assign(static_cast<std::size_t>(a.dim) * a.dim * a.dim, 0);
  for (int x = 0; x < a.dim; ++x)
    for (int y = 0; y < a.dim; ++y)
      if ((x & y) == 0) a.c[(static_cast<std::size_t>(x) * a.dim + y) * a.dim + (x | y)] = 1;
  a.unit = basis_vector(a.dim, 0);
  const std::string names = "xyzw";
  for (int x = 0; x < a.dim; ++x) {
    std::string s;
    for (int v = 0; v < vars; ++v)
      if (x & (1 << v)) s += names[v];
    a.basis.push_back(s.empty() ? "1" : s);
  }
  return a;
}

ValidationReport validate_algebra_map(const AlgebraMap& f) {
  ValidationReport r;
  r.merge(validate_algebra(f.src), "source: ");
  r.merge(validate_algebra(f.tgt), "target: ");
  if (!r.ok()) return r;
  if (f.src.p != f.tgt.p) r.add("characteristics differ");
  if (f.f.rows != f.tgt.dim || f.f.cols != f.src.dim) r.add("matrix has the wrong shape");
  if (!r.ok()) return r;
  auto apply = [&](const std::vector<int>& x) {
    std::vector<int> y(f.tgt.dim, 0);
    for (int i = 0; i < f.tgt.dim; ++i)
      for (int j = 0; j < f.src.dim; ++j) y[i] = (y[i] + f.f.at(i, j) * x[j]) % f.src.p;
    return y;
  };
  if (apply(f.src.unit) != f.tgt.unit) r.add("unit not preserved");
  for (int i = 0; i < f.src.dim; ++i)
    for (int j = 0; j < f.src.dim; ++j) {
      auto ei = basis_vector(f.src.dim, i), ej = basis_vector(f.src.dim, j);
      if (apply(f.src.multiply(ei, ej)) != f.tgt.multiply(apply(ei), apply(ej)))
        r.add("product not preserved at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  return r;
}

AlgebraMap identity_algebra_map(const FiniteAlgebra& a) { return {a, a, Matrix::identity(a.dim)}; }

AlgebraMap polynomial_inclusion(int p, int m, int n) {
  if (m > n) throw InputError("polynomial_inclusion: m > n");
  AlgebraMap f{truncated_polynomial(p, m), truncated_polynomial(p, n), {}};
  f.f = Matrix(f.tgt.dim, f.src.dim);
  for (int x = 0; x < f.src.dim; ++x) f.f.at(x, x) = 1;
  return f;
}

AlgebraMap augmentation(int p) {
  AlgebraMap f{truncated_polynomial(p, 1), truncated_polynomial(p, 0), Matrix(1, 2)};
  f.f.at(0, 0) = 1;
  return f;
}

// ---- modules --------------------------------------------------------------------

ValidationReport validate_module_complex(const FiniteAlgebra& a, const ModuleComplex& m) {
  ValidationReport r = validate_complex(m.cx);
  if (!r.ok()) return r;
  if (m.cx.p != a.p) r.add("characteristic differs from the algebra");
  if (m.action.size() != m.cx.dims.size()) r.add("action missing for some degree");
  if (!r.ok()) return r;
  const int p = a.p;
  for (int k = m.cx.lo; k <= m.cx.hi; ++k) {
    const auto& act = m.action[k - m.cx.lo];
    const int d = m.cx.dim(k);
    std::string deg = " in degree " + std::to_string(k);
    if (act.size() != static_cast<std::size_t>(a.dim)) {
      r.add("wrong number of action matrices" + deg);
      continue;
    }
    bool shapes = true;
    for (const Matrix& x : act) shapes = shapes && x.rows == d && x.cols == d;
    if (!shapes) {
      r.add("action matrix has the wrong shape" + deg);
      continue;
    }
    Matrix u(d, d);
    for (int i = 0; i < a.dim; ++i) u = mat_add(u, mat_scale(act[i], a.unit[i], p), p);
    if (u != Matrix::identity(d)) r.add("unit does not act as the identity" + deg);
    for (int i = 0; i < a.dim; ++i)
      for (int j = 0; j < a.dim; ++j) {
        Matrix rhs(d, d);
        for (int t = 0; t < a.dim; ++t) rhs = mat_add(rhs, mat_scale(act[t], a.coeff(i, j, t), p), p);
        if (mat_mul(act[i], act[j], p) != rhs)
          r.add("action not multiplicative at (" + std::to_string(i) + "," + std::to_string(j) + ")" + deg);
      }
    if (k < m.cx.hi) {
      const auto& next = m.action[k + 1 - m.cx.lo];
      if (next.size() == act.size())
        for (int i = 0; i < a.dim; ++i)
          if (next[i].rows == m.cx.dim(k + 1) &&
              mat_mul(m.cx.diff(k), act[i], p) != mat_mul(next[i], m.cx.diff(k), p))
            r.add("differential not linear" + deg);
    }
  }
  return r;
}

ValidationReport validate_module_map(const FiniteAlgebra& a, const ModuleComplexMap& f) {
  ValidationReport r;
  r.merge(validate_module_complex(a, f.src), "source: ");
  r.merge(validate_module_complex(a, f.tgt), "target: ");
  if (!r.ok()) return r;
  r.merge(validate_complex_map(f.underlying()));
  if (!r.ok()) return r;
  for (int k = f.src.cx.lo; k <= f.src.cx.hi; ++k) {
    const Matrix& g = f.f[k - f.src.cx.lo];
    for (int i = 0; i < a.dim; ++i)
      if (mat_mul(g, f.src.action[k - f.src.cx.lo][i], a.p) != mat_mul(f.tgt.action[k - f.src.cx.lo][i], g, a.p)) {
        r.add("component in degree " + std::to_string(k) + " is not linear");
        break;
      }
  }
  return r;
}

ModuleComplex module_in_degree(const FiniteAlgebra& a, int dim, std::vector<Matrix> action) {
  return {make_complex(a.p, 0, {dim}, {}), {std::move(action)}};
}

ModuleComplex regular_module(const FiniteAlgebra& a) {
  std::vector<Matrix> act;
  for (int i = 0; i < a.dim; ++i) {
    Matrix m(a.dim, a.dim);
    for (int j = 0; j < a.dim; ++j)
      for (int k = 0; k < a.dim; ++k) m.at(k, j) = a.coeff(i, j, k);
    act.push_back(std::move(m));
  }
  return module_in_degree(a, a.dim, std::move(act));
}

ModuleComplex trivial_module(const FiniteAlgebra& a) {
  std::vector<Matrix> act;
  for (int i = 0; i < a.dim; ++i) {
    Matrix m(1, 1);
    m.at(0, 0) = i == 0 ? 1 : 0;
    act.push_back(std::move(m));
  }
  return module_in_degree(a, 1, std::move(act));
}

ModuleComplex zero_module_complex(const FiniteAlgebra& a, int lo, int hi) {
  ModuleComplex m{zero_complex(a.p, lo, hi), {}};
  for (int k = lo; k <= hi; ++k) m.action.push_back(std::vector<Matrix>(a.dim, Matrix(0, 0)));
  return m;
}

namespace {

std::vector<Matrix> action_at(const ModuleComplex& m, int k, int adim) {
  if (k < m.cx.lo || k > m.cx.hi) return std::vector<Matrix>(adim, Matrix(0, 0));
  return m.action[k - m.cx.lo];
}

ModuleComplex module_rewindow(const ModuleComplex& m, int lo, int hi, int adim) {
  ModuleComplex r{rewindow(m.cx, lo, hi), {}};
  for (int k = lo; k <= hi; ++k) r.action.push_back(action_at(m, k, adim));
  return r;
}

int algebra_dim(const ModuleComplex& m) { return m.action.empty() ? 0 : static_cast<int>(m.action[0].size()); }

}  // namespace

ModuleComplex module_direct_sum(const ModuleComplex& m, const ModuleComplex& n) {
  int adim = std::max(algebra_dim(m), algebra_dim(n));
  ModuleComplex s{direct_sum(m.cx, n.cx), {}};
  for (int k = s.cx.lo; k <= s.cx.hi; ++k) {
    auto am = action_at(m, k, adim), an = action_at(n, k, adim);
    std::vector<Matrix> act;
    for (int i = 0; i < adim; ++i) act.push_back(block_sum(am[i], an[i]));
    s.action.push_back(std::move(act));
  }
  return s;
}

ModuleComplexMap module_identity(const ModuleComplex& m) { return {m, m, identity_map(m.cx).f}; }

ModuleComplexMap module_to_zero(const FiniteAlgebra& a, const ModuleComplex& m) {
  ModuleComplex z = zero_module_complex(a, m.cx.lo, m.cx.hi);
  return {m, z, zero_map(m.cx, z.cx).f};
}

ModuleComplex restrict_scalars(const AlgebraMap& f, const ModuleComplex& n) {
  const int p = f.src.p;
  ModuleComplex r{n.cx, {}};
  for (const auto& act : n.action) {
    std::vector<Matrix> out;
    int d = act.empty() ? 0 : act[0].rows;
    for (int i = 0; i < f.src.dim; ++i) {
      Matrix m(d, d);
      for (int j = 0; j < f.tgt.dim; ++j) m = mat_add(m, mat_scale(act[j], f.f.at(j, i), p), p);
      out.push_back(std::move(m));
    }
    r.action.push_back(std::move(out));
  }
  return r;
}

ModuleComplexMap restrict_scalars(const AlgebraMap& f, const ModuleComplexMap& g) {
  return {restrict_scalars(f, g.src), restrict_scalars(f, g.tgt), g.f};
}

namespace {

// f(e_i) as coordinates in the target.
std::vector<int> image_of(const AlgebraMap& f, int i) {
  std::vector<int> v(f.tgt.dim);
  for (int j = 0; j < f.tgt.dim; ++j) v[j] = f.f.at(j, i);
  return v;
}

// Tensor and Hom coordinates: index a·d + b for basis e_a of S and m_b of M.
struct Induced {
  ModuleComplex module;
  std::vector<Cokernel> quot;
};

Induced induce_data(const AlgebraMap& f, const ModuleComplex& m) {
  const FiniteAlgebra& S = f.tgt;
  const int p = S.p, s = S.dim;
  Induced out;
  std::vector<int> dims;
  for (int k = m.cx.lo; k <= m.cx.hi; ++k) {
    const int d = m.cx.dim(k);
    const auto& act = m.action[k - m.cx.lo];
    std::vector<std::vector<int>> rels;
    for (int a = 0; a < s; ++a)
      for (int i = 0; i < f.src.dim; ++i) {
        std::vector<int> ear = S.multiply(basis_vector(s, a), image_of(f, i));
        for (int b = 0; b < d; ++b) {
          std::vector<int> v(static_cast<std::size_t>(s) * d, 0);
          for (int t = 0; t < s; ++t) v[t * d + b] = md(v[t * d + b] + ear[t], p);
          for (int mm = 0; mm < d; ++mm) v[a * d + mm] = md(v[a * d + mm] - act[i].at(mm, b), p);
          rels.push_back(std::move(v));
        }
      }
    Matrix rel(s * d, static_cast<int>(rels.size()));
    for (std::size_t c = 0; c < rels.size(); ++c)
      for (int t = 0; t < s * d; ++t) rel.at(t, static_cast<int>(c)) = rels[c][t];
    out.quot.push_back(cokernel(rel, s * d, p));
    dims.push_back(out.quot.back().proj.rows);
  }
  std::vector<Matrix> ds;
  for (int k = m.cx.lo; k <= m.cx.hi; ++k) {
    const Cokernel& ck = out.quot[k - m.cx.lo];
    if (k == m.cx.hi) {
      ds.push_back(zero(0, ck.proj.rows));
      continue;
    }
    const Cokernel& next = out.quot[k + 1 - m.cx.lo];
    ds.push_back(mat_mul(mat_mul(next.proj, block_diagonal(s, m.cx.diff(k)), p), ck.sect, p));
  }
  out.module.cx = make_complex(p, m.cx.lo, dims, ds);
  for (int k = m.cx.lo; k <= m.cx.hi; ++k) {
    const int d = m.cx.dim(k);
    const Cokernel& ck = out.quot[k - m.cx.lo];
    std::vector<Matrix> act;
    for (int c = 0; c < s; ++c) {
      Matrix t(s * d, s * d);
      for (int a = 0; a < s; ++a)
        for (int u = 0; u < s; ++u)
          for (int b = 0; b < d; ++b) t.at(u * d + b, a * d + b) = S.coeff(c, a, u);
      act.push_back(mat_mul(mat_mul(ck.proj, t, p), ck.sect, p));
    }
    out.module.action.push_back(std::move(act));
  }
  return out;
}

struct Coinduced {
  ModuleComplex module;
  std::vector<Matrix> incl;  // basis of Hom_R(S, M^k) inside Hom_k
  std::vector<Matrix> retr;
};

Coinduced coinduce_data(const AlgebraMap& f, const ModuleComplex& m) {
  const FiniteAlgebra& S = f.tgt;
  const int p = S.p, s = S.dim;
  Coinduced out;
  std::vector<int> dims;
  for (int k = m.cx.lo; k <= m.cx.hi; ++k) {
    const int d = m.cx.dim(k);
    const auto& act = m.action[k - m.cx.lo];
    // φ(f(r_i) e_a) = r_i φ(e_a)
    Matrix cons(f.src.dim * s * d, s * d);
    int row = 0;
    for (int i = 0; i < f.src.dim; ++i)
      for (int a = 0; a < s; ++a) {
        std::vector<int> w = S.multiply(image_of(f, i), basis_vector(s, a));
        for (int b = 0; b < d; ++b, ++row) {
          for (int t = 0; t < s; ++t) cons.at(row, t * d + b) = md(cons.at(row, t * d + b) + w[t], p);
          for (int mm = 0; mm < d; ++mm) cons.at(row, a * d + mm) = md(cons.at(row, a * d + mm) - act[i].at(b, mm), p);
        }
      }
    Matrix e = kernel_basis(cons, p);
    out.retr.push_back(left_inverse(e, p));
    out.incl.push_back(std::move(e));
    dims.push_back(out.incl.back().cols);
  }
  std::vector<Matrix> ds;
  for (int k = m.cx.lo; k <= m.cx.hi; ++k) {
    if (k == m.cx.hi) {
      ds.push_back(zero(0, dims[k - m.cx.lo]));
      continue;
    }
    ds.push_back(mat_mul(mat_mul(out.retr[k + 1 - m.cx.lo], block_diagonal(s, m.cx.diff(k)), p), out.incl[k - m.cx.lo], p));
  }
  out.module.cx = make_complex(p, m.cx.lo, dims, ds);
  for (int k = m.cx.lo; k <= m.cx.hi; ++k) {
    const int d = m.cx.dim(k);
    std::vector<Matrix> act;
    for (int c = 0; c < s; ++c) {
      // (e_c φ)(e_a) = φ(e_a e_c)
      Matrix u(s * d, s * d);
      for (int a = 0; a < s; ++a)
        for (int t = 0; t < s; ++t)
          for (int b = 0; b < d; ++b) u.at(a * d + b, t * d + b) = md(u.at(a * d + b, t * d + b) + S.coeff(a, c, t), p);
      act.push_back(mat_mul(mat_mul(out.retr[k - m.cx.lo], u, p), out.incl[k - m.cx.lo], p));
    }
    out.module.action.push_back(std::move(act));
  }
  return out;
}

}  // namespace

ModuleComplex induce(const AlgebraMap& f, const ModuleComplex& m) { return induce_data(f, m).module; }

ModuleComplexMap induce(const AlgebraMap& f, const ModuleComplexMap& g) {
  Induced a = induce_data(f, g.src), b = induce_data(f, g.tgt);
  ModuleComplexMap h{a.module, b.module, {}};
  for (std::size_t k = 0; k < g.f.size(); ++k)
    h.f.push_back(mat_mul(mat_mul(b.quot[k].proj, block_diagonal(f.tgt.dim, g.f[k]), f.tgt.p), a.quot[k].sect, f.tgt.p));
  return h;
}

ModuleComplex coinduce(const AlgebraMap& f, const ModuleComplex& m) { return coinduce_data(f, m).module; }

ModuleComplexMap coinduce(const AlgebraMap& f, const ModuleComplexMap& g) {
  Coinduced a = coinduce_data(f, g.src), b = coinduce_data(f, g.tgt);
  ModuleComplexMap h{a.module, b.module, {}};
  for (std::size_t k = 0; k < g.f.size(); ++k)
    h.f.push_back(mat_mul(mat_mul(b.retr[k], block_diagonal(f.tgt.dim, g.f[k]), f.tgt.p), a.incl[k], f.tgt.p));
  return h;
}

std::vector<std::vector<Matrix>> hom_basis(const FiniteAlgebra& a, const ModuleComplex& m0, const ModuleComplex& n0) {
  const int p = a.p;
  int lo = std::min(m0.cx.lo, n0.cx.lo), hi = std::max(m0.cx.hi, n0.cx.hi);
  ModuleComplex m = module_rewindow(m0, lo, hi, a.dim), n = module_rewindow(n0, lo, hi, a.dim);
  std::vector<int> offset;
  int vars = 0;
  for (int k = lo; k <= hi; ++k) {
    offset.push_back(vars);
    vars += n.cx.dim(k) * m.cx.dim(k);
  }
  auto var = [&](int k, int r, int c) { return offset[k - lo] + r * m.cx.dim(k) + c; };
  std::vector<std::vector<int>> rows;
  for (int k = lo; k <= hi; ++k) {
    const int dm = m.cx.dim(k), dn = n.cx.dim(k);
    for (int i = 0; i < a.dim; ++i) {
      const Matrix& rm = m.action[k - lo][i];
      const Matrix& rn = n.action[k - lo][i];
      for (int r = 0; r < dn; ++r)
        for (int c = 0; c < dm; ++c) {
          std::vector<int> row(vars, 0);
          for (int t = 0; t < dn; ++t) row[var(k, t, c)] = md(row[var(k, t, c)] + rn.at(r, t), p);
          for (int t = 0; t < dm; ++t) row[var(k, r, t)] = md(row[var(k, r, t)] - rm.at(t, c), p);
          rows.push_back(std::move(row));
        }
    }
    if (k < hi) {
      // d_N g_k = g_{k+1} d_M
      Matrix dn_k = n.cx.diff(k), dm_k = m.cx.diff(k);
      const int dm1 = m.cx.dim(k + 1), dn1 = n.cx.dim(k + 1);
      for (int r = 0; r < dn1; ++r)
        for (int c = 0; c < dm; ++c) {
          std::vector<int> row(vars, 0);
          for (int t = 0; t < dn; ++t) row[var(k, t, c)] = md(row[var(k, t, c)] + dn_k.at(r, t), p);
          for (int t = 0; t < dm1; ++t) row[var(k + 1, r, t)] = md(row[var(k + 1, r, t)] - dm_k.at(t, c), p);
          rows.push_back(std::move(row));
        }
    }
  }
  Matrix cons(static_cast<int>(rows.size()), vars);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < vars; ++c) cons.at(static_cast<int>(r), c) = rows[r][c];
  Matrix ker = kernel_basis(cons, p);
  std::vector<std::vector<Matrix>> basis;
  for (int b = 0; b < ker.cols; ++b) {
    std::vector<Matrix> g;
    for (int k = lo; k <= hi; ++k) {
      Matrix x(n.cx.dim(k), m.cx.dim(k));
      for (int r = 0; r < x.rows; ++r)
        for (int c = 0; c < x.cols; ++c) x.at(r, c) = ker.at(var(k, r, c), b);
      g.push_back(std::move(x));
    }
    basis.push_back(std::move(g));
  }
  return basis;
}

int hom_dim(const FiniteAlgebra& a, const ModuleComplex& m, const ModuleComplex& n) {
  return static_cast<int>(hom_basis(a, m, n).size());
}

namespace {

std::uint64_t count(int p, int dim) {
  std::uint64_t c = 1;
  for (int k = 0; k < dim; ++k) {
    if (c > UINT64_MAX / static_cast<std::uint64_t>(p)) throw BudgetExceeded("hom-set count overflows 64 bits");
    c *= static_cast<std::uint64_t>(p);
  }
  return c;
}

}  // namespace

AdjunctionCounts adjunction_counts(const AlgebraMap& f, const ModuleComplex& m, const ModuleComplex& n) {
  const int p = f.src.p;
  AdjunctionCounts c;
  ModuleComplex rn = restrict_scalars(f, n);
  c.induce_side = count(p, hom_dim(f.tgt, induce(f, m), n));
  c.restrict_left = count(p, hom_dim(f.src, m, rn));
  c.restrict_right = count(p, hom_dim(f.src, rn, m));
  c.coinduce_side = count(p, hom_dim(f.tgt, n, coinduce(f, m)));
  return c;
}

bool is_free_over_source(const AlgebraMap& f, std::uint64_t budget) {
  const int p = f.src.p, rd = f.src.dim, sd = f.tgt.dim;
  if (sd % rd != 0) return false;
  const int k = sd / rd;
  // products f(r_i)·e_a, used to assemble candidate basis maps
  std::vector<std::vector<std::vector<int>>> left(rd, std::vector<std::vector<int>>(sd));
  for (int i = 0; i < rd; ++i)
    for (int a = 0; a < sd; ++a) left[i][a] = f.tgt.multiply(image_of(f, i), basis_vector(sd, a));
  const int digits = sd * k;
  std::vector<int> g(digits, 0);
  std::uint64_t tried = 0;
  while (true) {
    if (++tried > budget) throw BudgetExceeded("is_free_over_source: more than " + std::to_string(budget) + " candidates");
    Matrix m(sd, k * rd);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < rd; ++i)
        for (int a = 0; a < sd; ++a) {
          int coeff = g[j * sd + a];
          if (coeff == 0) continue;
          for (int t = 0; t < sd; ++t) m.at(t, j * rd + i) = md(m.at(t, j * rd + i) + static_cast<long long>(coeff) * left[i][a][t], p);
        }
    if (mat_rank(m, p) == sd) return true;
    int pos = 0;
    while (pos < digits && ++g[pos] == p) g[pos++] = 0;
    if (pos == digits) return false;
  }
}

PreservationReport check_preservation(const AlgebraMap& f, const std::vector<ModuleComplexMap>& maps) {
  PreservationReport r;
  for (std::size_t idx = 0; idx < maps.size(); ++idx) {
    const ModuleComplexMap& g = maps[idx];
    ComplexMap u = g.underlying();
    std::string tag = "map " + std::to_string(idx) + ": ";
    ComplexMap co = restrict_scalars(f, coinduce(f, g)).underlying();
    ComplexMap in = restrict_scalars(f, induce(f, g)).underlying();
    if (is_degreewise_epi(u)) {
      ++r.epis;
      if (is_degreewise_epi(co)) ++r.epis_preserved;
      else r.failures.push_back(tag + "restrict∘coinduce loses epi");
    }
    if (is_degreewise_mono(u)) {
      ++r.monos;
      if (is_degreewise_mono(in)) ++r.monos_preserved;
      else r.failures.push_back(tag + "restrict∘induce loses mono");
    }
    if (is_quasi_iso(u)) {
      ++r.quasi_isos;
      if (is_quasi_iso(co)) ++r.coinduce_qi_preserved;
      else r.failures.push_back(tag + "restrict∘coinduce loses quasi-iso");
      if (is_quasi_iso(in)) ++r.induce_qi_preserved;
      else r.failures.push_back(tag + "restrict∘induce loses quasi-iso");
    }
  }
  return r;
}

namespace {

Matrix random_combination(std::mt19937& rng, int p, const std::vector<Matrix>& basis, int rows, int cols) {
  Matrix out(rows, cols);
  std::uniform_int_distribution<int> coeff(0, p - 1);
  for (const Matrix& b : basis) out = mat_add(out, mat_scale(b, coeff(rng), p), p);
  return out;
}

}  // namespace

ModuleComplex random_module_complex(std::mt19937& rng, const FiniteAlgebra& a, int lo, int hi, int max_dim) {
  ModuleComplex regular = regular_module(a), trivial = trivial_module(a);
  std::vector<ModuleComplex> pieces;
  for (int k = lo; k <= hi; ++k) {
    ModuleComplex piece = zero_module_complex(a, 0, 0);
    int budget = std::uniform_int_distribution<int>(0, max_dim)(rng);
    while (true) {
      bool reg = std::uniform_int_distribution<int>(0, 1)(rng) == 1 && a.dim <= budget;
      int cost = reg ? a.dim : 1;
      if (cost > budget) break;
      piece = module_direct_sum(piece, reg ? regular : trivial);
      budget -= cost;
    }
    pieces.push_back(std::move(piece));
  }
  ModuleComplex m{make_complex(a.p, lo, std::vector<int>(hi - lo + 1, 0), {}), {}};
  for (int k = lo; k <= hi; ++k) {
    m.cx.dims[k - lo] = pieces[k - lo].cx.dim(0);
    m.action.push_back(pieces[k - lo].action[0]);
  }
  for (int k = lo; k <= hi; ++k) m.cx.d[k - lo] = zero(m.cx.dim(k + 1), m.cx.dim(k));
  for (int k = lo; k < hi; ++k) {
    // linear maps M^k -> M^{k+1} killing the image of d_{k-1}
    ModuleComplex src{make_complex(a.p, 0, {m.cx.dim(k - 1), m.cx.dim(k)}, {m.cx.diff(k - 1)}), {}};
    src.action = {action_at(m, k - 1, a.dim), m.action[k - lo]};
    ModuleComplex tgt{make_complex(a.p, 0, {0, m.cx.dim(k + 1)}, {}), {}};
    tgt.action = {std::vector<Matrix>(a.dim, Matrix(0, 0)), m.action[k + 1 - lo]};
    // chain maps src -> tgt, shifted: components in degree 1 are the candidates
    std::vector<Matrix> cands;
    for (auto& g : hom_basis(a, src, tgt)) cands.push_back(g[1]);
    m.cx.d[k - lo] = random_combination(rng, a.p, cands, m.cx.dim(k + 1), m.cx.dim(k));
  }
  return m;
}

ModuleComplexMap random_module_map(std::mt19937& rng, const FiniteAlgebra& a, const ModuleComplex& m, const ModuleComplex& n) {
  if (m.cx.lo != n.cx.lo || m.cx.hi != n.cx.hi) throw InputError("random_module_map: windows differ");
  auto basis = hom_basis(a, m, n);
  ModuleComplexMap g{m, n, {}};
  std::uniform_int_distribution<int> coeff(0, a.p - 1);
  for (int k = m.cx.lo; k <= m.cx.hi; ++k) g.f.push_back(Matrix(n.cx.dim(k), m.cx.dim(k)));
  for (const auto& b : basis) {
    int c = coeff(rng);
    for (std::size_t k = 0; k < g.f.size(); ++k) g.f[k] = mat_add(g.f[k], mat_scale(b[k], c, a.p), a.p);
  }
  return g;
}

}  // namespace catkit
