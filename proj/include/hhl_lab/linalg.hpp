#pragma once

// Dense complex linear algebra at desk scale (N <= 32): vectors, matrices,
// a cyclic Jacobi eigensolver for Hermitian matrices, seeded random test
// systems and the state-distance identity.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hhl_lab/error.hpp"
#include "hhl_lab/tolerances.hpp"

namespace hhl_lab {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// ---------------------------------------------------------------------------
// Vectors

inline Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::DimensionMismatch, "inner product of vectors with different lengths");
  }
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

inline double norm_squared(std::span<const Complex> v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return acc;
}

inline double norm(std::span<const Complex> v) { return std::sqrt(norm_squared(v)); }

inline bool is_finite(std::span<const Complex> v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

inline bool is_normalized(std::span<const Complex> v, double tol = Tolerances::normalization) {
  return is_finite(v) && std::abs(norm(v) - 1.0) <= tol;
}

inline ComplexVector normalized(ComplexVector v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorKind::NotNormalized, "cannot normalize a zero or non-finite vector");
  }
  for (auto& z : v) z /= n;
  return v;
}

inline double distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::DimensionMismatch, "distance between vectors with different lengths");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a[i] - b[i]);
  return std::sqrt(acc);
}

/// Distance between two unit vectors through the overlap, sqrt(2(1 - Re<a|b>)).
/// Agrees with ||a - b|| for normalized inputs.
inline double state_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::DimensionMismatch, "state_distance: dimensions differ");
  }
  if (!is_normalized(a) || !is_normalized(b)) {
    throw Error(ErrorKind::NotNormalized, "state_distance expects unit vectors");
  }
  const double overlap = inner(a, b).real();
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - overlap)));
}

// ---------------------------------------------------------------------------
// Matrices

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(std::span<const double> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> data() const noexcept { return data_; }

  ComplexVector column(std::size_t c) const {
    ComplexVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  Matrix adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  double frobenius_norm() const { return norm(data_); }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend ComplexVector operator*(const Matrix& a, std::span<const Complex> x) {
    if (a.cols_ != x.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector shape mismatch");
    ComplexVector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * x[j];
    return out;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw Error(ErrorKind::DimensionMismatch, "matrix difference shape mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// A square matrix checked to equal its adjoint entrywise within
/// Tolerances::hermitian (relative to max(1, max|a_ij|)). The stored matrix
/// is the exact Hermitian part (A + A^†)/2.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::NotHermitian, "matrix is not square");
    const double scale = std::max(1.0, m.max_abs());
    const std::size_t n = m.rows();
    m_ = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const Complex a = m(i, j);
        const Complex b = std::conj(m(j, i));
        if (std::abs(a - b) > Tolerances::hermitian * scale) {
          throw Error(ErrorKind::NotHermitian, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                   ") differs from the conjugate of its transpose");
        }
        const Complex avg = 0.5 * (a + b);
        m_(i, j) = avg;
        m_(j, i) = std::conj(avg);
      }
      m_(i, i) = m_(i, i).real();
    }
  }

  std::size_t size() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  Matrix m_;
};

struct Eigendecomposition {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // unitary, column j pairs with eigenvalues[j]
  int sweeps = 0;
};

// Phase convention: the largest-modulus entry of every column is real-positive.
inline void fix_column_phases(Matrix& u) {
  for (std::size_t c = 0; c < u.cols(); ++c) {
    std::size_t best = 0;
    double best_abs = -1.0;
    for (std::size_t r = 0; r < u.rows(); ++r) {
      const double a = std::abs(u(r, c));
      if (a > best_abs) {
        best_abs = a;
        best = r;
      }
    }
    if (best_abs <= 0.0) continue;
    const Complex phase = std::conj(u(best, c)) / best_abs;
    for (std::size_t r = 0; r < u.rows(); ++r) u(r, c) *= phase;
    u(best, c) = best_abs;
  }
}

/// Cyclic complex Jacobi. Each rotation first removes the phase of a_pq
/// with a diagonal unitary and then applies the real symmetric Jacobi
/// rotation, so A <- J^† A J with J = diag(1, e^{-i phi}) R(theta) on (p,q).
inline Eigendecomposition eigh(const HermitianMatrix& hm) {
  Matrix a = hm.matrix();
  const std::size_t n = a.rows();
  Matrix v = Matrix::identity(n);

  const double total = std::max(a.frobenius_norm(), 1e-300);
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() > 1e-15 * total) {
    if (sweep >= Tolerances::jacobi_max_sweeps) {
      throw Error(ErrorKind::NoConvergence, "Jacobi did not converge within " +
                                                std::to_string(Tolerances::jacobi_max_sweeps) + " sweeps");
    }
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        const Complex phase = a(p, q) / r;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  Eigendecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
  }
  fix_column_phases(out.eigenvectors);
  out.sweeps = sweep;
  return out;
}

inline Matrix reconstruct(std::span<const double> eigenvalues, const Matrix& u) {
  return u * Matrix::diagonal(eigenvalues) * u.adjoint();
}

/// Solves A x = b by LU with partial pivoting (classical reference solver).
inline ComplexVector solve(const Matrix& a_in, std::span<const Complex> b_in) {
  const std::size_t n = a_in.rows();
  if (a_in.cols() != n || b_in.size() != n) throw Error(ErrorKind::DimensionMismatch, "solve: shape mismatch");
  Matrix a = a_in;
  ComplexVector b(b_in.begin(), b_in.end());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (std::abs(a(piv, col)) == 0.0) throw Error(ErrorKind::BadParameter, "solve: singular matrix");
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(piv, c));
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex m = a(r, col) / a(col, col);
      if (m == Complex{0.0, 0.0}) continue;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= m * a(col, c);
      b[r] -= m * b[col];
    }
  }
  ComplexVector x(n);
  for (std::size_t i = n; i-- > 0;) {
    Complex acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a(i, c) * x[c];
    x[i] = acc / a(i, i);
  }
  return x;
}

// ---------------------------------------------------------------------------
// Seeded randomness
//
// Streams are std::mt19937_64 (bit-exact by the standard). Uniforms take the
// top 53 bits of one draw; standard complex Gaussians use Box-Muller on two
// uniforms, with (x + iy)/sqrt(2). std::*_distribution is avoided because its
// algorithm is implementation-defined.

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t next_u64() { return engine_(); }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  Complex complex_gaussian() {
    const double x = gaussian();
    const double y = gaussian();
    return Complex{x, y} * (1.0 / std::numbers::sqrt2);
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-like unitary: modified Gram-Schmidt (two passes) on the columns of a
/// seeded complex Gaussian matrix.
inline Matrix random_unitary(std::size_t n, Rng& rng) {
  Matrix g(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) g(r, c) = rng.complex_gaussian();

  for (std::size_t c = 0; c < n; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t prev = 0; prev < c; ++prev) {
        Complex proj{0.0, 0.0};
        for (std::size_t r = 0; r < n; ++r) proj += std::conj(g(r, prev)) * g(r, c);
        for (std::size_t r = 0; r < n; ++r) g(r, c) -= proj * g(r, prev);
      }
    }
    double nrm = 0.0;
    for (std::size_t r = 0; r < n; ++r) nrm += std::norm(g(r, c));
    nrm = std::sqrt(nrm);
    for (std::size_t r = 0; r < n; ++r) g(r, c) /= nrm;
  }
  return g;
}

inline ComplexVector random_state(std::size_t n, Rng& rng) {
  ComplexVector v(n);
  for (auto& z : v) z = rng.complex_gaussian();
  return normalized(std::move(v));
}

// ---------------------------------------------------------------------------
// Hermitian systems

/// Admissible eigenvalue window for a clock register of dimension T:
/// [(T-1)/(T kappa), (T-1)/T].
struct SpectrumWindow {
  double lo;
  double hi;
};

inline SpectrumWindow spectrum_window(double kappa, std::int64_t clock_dim) {
  const double t = static_cast<double>(clock_dim);
  return {(t - 1.0) / (t * kappa), (t - 1.0) / t};
}

class HermitianSystem {
 public:
  /// Builds A = U diag(lambda) U^† from an ascending spectrum and a unitary.
  static HermitianSystem from_spectrum(std::vector<double> eigenvalues, Matrix eigenvectors) {
    if (eigenvalues.empty() || eigenvectors.rows() != eigenvalues.size() ||
        eigenvectors.cols() != eigenvalues.size()) {
      throw Error(ErrorKind::DimensionMismatch, "spectrum and eigenvector matrix sizes differ");
    }
    if (!std::is_sorted(eigenvalues.begin(), eigenvalues.end())) {
      throw Error(ErrorKind::BadParameter, "eigenvalues must be ascending");
    }
    if (!(eigenvalues.front() > 0.0)) {
      throw Error(ErrorKind::BadParameter, "eigenvalues must be positive");
    }
    HermitianSystem s;
    s.matrix_ = HermitianMatrix(reconstruct(eigenvalues, eigenvectors)).matrix();
    s.eigenvalues_ = std::move(eigenvalues);
    s.eigenvectors_ = std::move(eigenvectors);
    s.kappa_ = s.eigenvalues_.back() / s.eigenvalues_.front();
    return s;
  }

  static HermitianSystem from_matrix(const HermitianMatrix& m) {
    auto dec = eigh(m);
    if (!(dec.eigenvalues.front() > 0.0)) {
      throw Error(ErrorKind::BadParameter, "matrix must be positive definite");
    }
    HermitianSystem s;
    s.matrix_ = m.matrix();
    s.eigenvalues_ = std::move(dec.eigenvalues);
    s.eigenvectors_ = std::move(dec.eigenvectors);
    s.kappa_ = s.eigenvalues_.back() / s.eigenvalues_.front();
    return s;
  }

  std::size_t size() const noexcept { return eigenvalues_.size(); }
  const Matrix& matrix() const noexcept { return matrix_; }
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
  const Matrix& eigenvectors() const noexcept { return eigenvectors_; }
  double kappa() const noexcept { return kappa_; }

  /// Eigenbasis coefficients -> computational basis.
  ComplexVector to_computational(std::span<const Complex> coeffs) const { return eigenvectors_ * coeffs; }
  /// Computational basis -> eigenbasis coefficients.
  ComplexVector to_eigenbasis(std::span<const Complex> v) const { return eigenvectors_.adjoint() * v; }

 private:
  HermitianSystem() = default;

  Matrix matrix_;
  std::vector<double> eigenvalues_;
  Matrix eigenvectors_;
  double kappa_ = 1.0;
};

/// Random positive-definite system with N = 2^n eigenvalues in the window for
/// clock dimension T. The two extreme eigenvalues sit exactly on the window
/// endpoints, so the realized condition number is kappa.
inline HermitianSystem random_system(int n, double kappa, std::int64_t clock_dim, std::uint64_t seed) {
  if (n < 1 || n > 5) throw Error(ErrorKind::BadParameter, "qubit count n must be in [1, 5]");
  if (!(kappa > 1.0) || !std::isfinite(kappa)) throw Error(ErrorKind::BadParameter, "kappa must exceed 1");
  if (clock_dim < 2) throw Error(ErrorKind::BadParameter, "clock dimension T must be at least 2");

  const std::size_t dim = std::size_t{1} << n;
  const auto window = spectrum_window(kappa, clock_dim);
  Rng rng(seed);

  std::vector<double> eigenvalues(dim);
  eigenvalues.front() = window.lo;
  eigenvalues.back() = window.hi;
  for (std::size_t j = 1; j + 1 < dim; ++j) eigenvalues[j] = rng.uniform(window.lo, window.hi);
  std::sort(eigenvalues.begin(), eigenvalues.end());

  Matrix u = random_unitary(dim, rng);
  return HermitianSystem::from_spectrum(std::move(eigenvalues), std::move(u));
}

}  // namespace hhl_lab
