#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <cstddef>
#include <thread>
#include <vector>

#include "oseen/operator_matrix.hpp"

namespace oseen {

enum class SvdMethod {
  Auto,     // Lanczos on the inverse
  Dense,    // LAPACK zgesdd
  Lanczos,  // Lanczos on (A - z)^{-*}(A - z)^{-1} with an equilibrated LU
};

/// sigma_min(A - z I). Requires an orthonormalized operator.
double smallest_singular_value(const OperatorMatrix& op, cplx z, SvdMethod method = SvdMethod::Auto);

/// Singular values of a dense matrix, descending.
RVec singular_values(const CMat& A);
double sigma_min_dense(const CMat& A);
/// Largest singular value of A^{-1} inverted; relative tolerance on sigma.
double sigma_min_lanczos(const CMat& A, double tol = 1e-10);

/// Eigenvalues of a general complex matrix (LAPACK zgeev).
CVec eigenvalues_general(const CMat& A);
/// Eigenvalues (ascending) of a Hermitian matrix; only the lower triangle is read.
RVec eigenvalues_hermitian(const CMat& A);
/// Smallest eigenvalue and its eigenvector of a Hermitian matrix.
std::pair<double, CVec> lowest_eigenpair(const CMat& A);

/// Zeroes entries below 1e-200 of the largest entry, keeping LAPACK off
/// subnormal arithmetic.
void flush_tiny(CMat& A);

/// Number of worker threads used by parallel_map (OSEEN_THREADS overrides).
unsigned worker_count();

/// Evaluates f(0..n-1) on a thread pool; results are stored by index so the
/// output does not depend on scheduling.
template <class F>
auto parallel_map(std::size_t n, F f) -> std::vector<decltype(f(std::size_t{0}))> {
  using R = decltype(f(std::size_t{0}));
  std::vector<R> out(n);
  const unsigned workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          out[i] = f(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace oseen
