#pragma once

#include <cstdint>
#include <vector>

#include "oseen/grid.hpp"
#include "oseen/profile.hpp"

namespace oseen {

enum class LogVariant {
  FullTilde,    // -d_t^2 + k^2 + e^{4t}/16 - e^{2t}/2 + skew terms
  NoHalfShift,  // the same without -e^{2t}/2
};

/// Biot-Savart kernel K_k on the interior radii, raw basis:
/// K[i,j] = (1/2k) min(r_i/r_j, r_j/r_i)^k r_j^2 h, with the diagonal reduced
/// by h^2 r_i^2 / 12 to absorb the kink of the kernel at r = s.
OperatorMatrix assemble_biot_savart(int k, const RadialGrid& grid);

/// -d_r^2 - r^{-1} d_r + k^2/r^2 on interior radii (raw basis), 5-point
/// Fornberg stencils in r with odd reflection in t across the endpoints.
OperatorMatrix radial_laplacian(int k, const RadialGrid& grid);

/// Applies the same stencils to a vector of values on all n nodes without
/// ghost closures; rows whose stencil leaves the grid are returned as zero.
CVec apply_radial_laplacian(int k, const RadialGrid& grid, const CVec& values);

/// Self-adjoint part -Delta_k + r^2/16 - 1/2 in the orthonormalized basis
/// (explicitly symmetrized). k = 0 is allowed here.
OperatorMatrix half_line_real_part(int k, const RadialGrid& grid);

/// H_{alpha,k,lambda} in the orthonormalized basis y_i = sqrt(h) r_i v_i.
OperatorMatrix assemble_half_line(const ModeParams& mp, const RadialGrid& grid,
                                  bool include_nonlocal = true);

/// The Toeplitz core T[i,j] = (h/2k) e^{-k|i-j|h}, diagonal reduced by h^2/12.
RVec toeplitz_kernel_column(int k, const LogGrid& grid);
Eigen::MatrixXd toeplitz_kernel(int k, const LogGrid& grid);

/// gamma <D_k>^{-2} gamma on the interior nodes; real symmetric PSD.
OperatorMatrix assemble_nonlocal(int k, const LogGrid& grid);

/// Log-line operator in the orthonormalized basis of L^2(dt).
OperatorMatrix assemble_log_line(const ModeParams& mp, const LogGrid& grid,
                                 LogVariant variant = LogVariant::FullTilde,
                                 bool include_nonlocal = true);

/// E^{-1} A E^{-1} with E = diag(e^{t_i}); maps the log-line operator to the
/// half-line operator in its orthonormalized basis.
OperatorMatrix to_weighted_basis(const OperatorMatrix& log_op);

/// Operator norm of e^{-2t} <D_k>^{-2} e^{2t} on the grid (k >= 3).
double weighted_conjugate_norm(int k, const LogGrid& grid);

/// Rayleigh quotients <Au,u>/<u,u> for `trials` random complex vectors.
std::vector<cplx> numerical_range_sample(const OperatorMatrix& op, int trials,
                                         std::uint64_t seed = 1);

}  // namespace oseen
