#pragma once

#include <functional>

#include "oseen/operator_matrix.hpp"

namespace oseen {

/// Uniform grid on [t_min, t_max] with trapezoid weights.
///
/// Nodes 0 and n-1 carry homogeneous Dirichlet data; discretized operators act
/// on the n-2 interior nodes.
struct LogGrid {
  double t_min = -12.0;
  double t_max = 3.0;
  int n = 601;
  double h = 0.025;
  RVec nodes;
  RVec weights;
  RVec W;  // e^{t_i}

  int interior_size() const { return n - 2; }
  RVec interior_nodes() const { return nodes.segment(1, n - 2); }
};

/// The same nodes seen as radii r_i = e^{t_i}; measure weights r_i^2 w_i
/// discretize r dr under r = e^t.
struct RadialGrid {
  LogGrid log;
  RVec r;
  RVec measure;

  int interior_size() const { return log.n - 2; }
  RVec interior_radii() const { return r.segment(1, log.n - 2); }
};

LogGrid make_log_grid(double t_min = -12.0, double t_max = 3.0, int n = 601);
RadialGrid make_radial_grid(const LogGrid& grid);

/// -d^2/dt^2 on the interior nodes: 4th-order centered stencil, odd reflection
/// across the Dirichlet endpoints (exactly symmetric).
OperatorMatrix second_derivative_matrix(const LogGrid& grid);

using Symbol = std::function<cplx(double)>;

/// m(D_t) u with D_t = -i d/dt, by FFT on the vector zero-padded to pad*len.
/// `u` may have length n (all nodes) or n-2 (interior nodes).
CVec apply_fourier_multiplier(const Symbol& m, const CVec& u, const LogGrid& grid, int pad = 2);

/// Dense matrix of the same zero-padded multiplier on the interior nodes.
CMat fourier_multiplier_matrix(const Symbol& m, const LogGrid& grid, int pad = 2);

/// ||e^{s t} u||_{L^2(dt)} by trapezoid quadrature; u on all nodes or interior nodes.
double weighted_norm(const CVec& u, const LogGrid& grid, double s);

}  // namespace oseen
