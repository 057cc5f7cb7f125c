#include "oseen/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include <Eigen/Eigenvalues>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "oseen/errors.hpp"

#if defined(__SSE2__)
#include <xmmintrin.h>
#endif

extern "C" void openblas_set_num_threads(int);

namespace oseen {
namespace {

void check_info(lapack_int info, const char* routine) {
  if (info != 0) {
    throw InternalError(std::string(routine) + " failed with info = " + std::to_string(info));
  }
}

// Task-level parallelism is done by parallel_map; BLAS stays single-threaded.
const bool kBlasSerial = [] {
  openblas_set_num_threads(1);
  return true;
}();

// Flush-to-zero and denormals-are-zero for the lifetime of the object.
class ScopedFlushDenormals {
 public:
#if defined(__SSE2__)
  ScopedFlushDenormals() : saved_(_mm_getcsr()) { _mm_setcsr(saved_ | 0x8040u); }
  ~ScopedFlushDenormals() { _mm_setcsr(saved_); }

 private:
  unsigned saved_;
#endif
};

}  // namespace

void flush_tiny(CMat& A) {
  const double cutoff = 1e-200 * A.cwiseAbs().maxCoeff();
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      if (std::abs(A(i, j).real()) < cutoff) A(i, j).real(0.0);
      if (std::abs(A(i, j).imag()) < cutoff) A(i, j).imag(0.0);
    }
  }
}

unsigned worker_count() {
  (void)kBlasSerial;
  if (const char* env = std::getenv("OSEEN_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

RVec singular_values(const CMat& A) {
  CMat work = A;
  const lapack_int m = static_cast<lapack_int>(A.rows());
  const lapack_int n = static_cast<lapack_int>(A.cols());
  RVec s(std::min(m, n));
  check_info(LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), m, s.data(), nullptr, 1,
                            nullptr, 1),
             "zgesdd");
  return s;
}

double sigma_min_dense(const CMat& A) {
  const RVec s = singular_values(A);
  return s[s.size() - 1];
}

double sigma_min_lanczos(const CMat& A, double tol) {
  const Eigen::Index n = A.rows();
  if (n == 0 || A.cols() != n) throw ContractError("sigma_min_lanczos: need a square matrix");
  RVec d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = std::abs(A(i, i));
    d[i] = a > 0.0 ? 1.0 / std::sqrt(a) : 1.0;
  }
  const ScopedFlushDenormals ftz;
  CMat B = d.asDiagonal() * A * d.asDiagonal();
  flush_tiny(B);
  const lapack_int ln = static_cast<lapack_int>(n);
  std::vector<lapack_int> piv(n);
  const lapack_int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, ln, ln, B.data(), ln, piv.data());
  if (info > 0) return 0.0;
  check_info(info, "zgetrf");
  auto solve = [&](CVec x, char trans) {
    check_info(LAPACKE_zgetrs(LAPACK_COL_MAJOR, trans, ln, 1, B.data(), ln, piv.data(), x.data(), ln),
               "zgetrs");
    return x;
  };
  // (A - z)^{-*}(A - z)^{-1} x with A - z = D^{-1} B D^{-1}.
  auto apply = [&](const CVec& x) -> CVec {
    const CVec y = d.asDiagonal() * solve(d.asDiagonal() * x, 'N');
    return d.asDiagonal() * solve(d.asDiagonal() * y, 'C');
  };

  const Eigen::Index max_steps = std::min<Eigen::Index>(n, 400);
  std::vector<CVec> V;
  V.reserve(max_steps + 1);
  CVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = cplx(1.0 + 0.37 * std::sin(1.3 * i), 0.21 * std::cos(0.7 * i));
  v.normalize();
  V.push_back(v);
  std::vector<double> alpha, beta;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < max_steps; ++j) {
    CVec w = apply(V[j]);
    if (!w.allFinite()) return 0.0;
    const double a = V[j].dot(w).real();
    alpha.push_back(a);
    // Full reorthogonalization, twice for stability.
    for (int pass = 0; pass < 2; ++pass) {
      for (const CVec& q : V) w -= q.dot(w) * q;
    }
    const double b = w.norm();
    const Eigen::Index m = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    theta = es.eigenvalues()[m - 1];
    const double resid = std::abs(b * es.eigenvectors()(m - 1, m - 1));
    if (theta <= 0.0) return 0.0;
    if (resid <= tol * theta || b <= 1e-300 || m == n) break;
    beta.push_back(b);
    V.push_back(w / b);
  }
  return 1.0 / std::sqrt(theta);
}

double smallest_singular_value(const OperatorMatrix& op, cplx z, SvdMethod method) {
  if (op.basis != Basis::Orthonormalized) {
    throw ContractError("smallest_singular_value: operator must be in the orthonormalized basis");
  }
  CMat A = op.entries;
  A.diagonal().array() -= z;
  if (method == SvdMethod::Dense) return sigma_min_dense(A);
  return sigma_min_lanczos(A);
}

CVec eigenvalues_general(const CMat& A) {
  CMat work = A;
  const lapack_int n = static_cast<lapack_int>(A.rows());
  CVec w(n);
  check_info(LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(), n, w.data(), nullptr, 1,
                           nullptr, 1),
             "zgeev");
  return w;
}

RVec eigenvalues_hermitian(const CMat& A) {
  CMat work = A;
  const lapack_int n = static_cast<lapack_int>(A.rows());
  RVec w(n);
  check_info(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, w.data()), "zheevd");
  return w;
}

std::pair<double, CVec> lowest_eigenpair(const CMat& A) {
  CMat work = A;
  const lapack_int n = static_cast<lapack_int>(A.rows());
  RVec w(n);
  CMat Z(n, 1);
  std::vector<lapack_int> isuppz(2);
  lapack_int found = 0;
  check_info(LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, work.data(), n, 0.0, 0.0, 1, 1,
                            0.0, &found, w.data(), Z.data(), n, isuppz.data()),
             "zheevr");
  return {w[0], Z.col(0)};
}

}  // namespace oseen
