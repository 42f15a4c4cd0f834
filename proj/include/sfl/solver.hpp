#pragma once

#include <span>
#include <vector>

#include "sfl/model.hpp"
#include "sfl/quadrature.hpp"

// Retarded-potential solver. In the Lorenz gauge with c = 1 the
// four-potential of a localized source switched on at t = 0 is
//
//   A^mu(x_P, t_P) = \int d^3x  j^mu(x, t_P - R) / R,     R = |x_P - x|,
//
// with j^0 = rho the bound charge density. E and B follow by centered
// finite differences of the potential (6-point spatial stencil, 2-point
// temporal stencil) with step halving for the error estimate; derivatives
// are taken on the computed potential rather than under the integral.
// All stencil offsets for one observation event are evaluated in a single
// pass over a shared cell decomposition, so differences of neighboring
// evaluations are free of refinement-pattern noise.

namespace sfl {

struct PotentialResult {
  double A0 = 0.0;
  Vec3 A;
  double err_est = 0.0;  // relative, from refinement level L vs L-1
};

struct SpacetimeOffset {
  Vec3 dx;
  double dt = 0.0;
};

// A^mu at x_P + offset for every offset, sharing one cell decomposition
// built at the nominal point. err_est is attached to each result.
std::vector<PotentialResult> retarded_potential_multi(const SourceConfig& cfg,
                                                      const SpacetimePoint& P,
                                                      std::span<const SpacetimeOffset> offsets,
                                                      const QuadratureSpec& q);

PotentialResult retarded_potential(const SourceConfig& cfg, const SpacetimePoint& P,
                                   const QuadratureSpec& q);

struct FdPolicy {
  double h_x = 1e-3;
  double h_t = 1e-3;
  bool shrink_with_distance = true;  // h / (1 + R_P / 100)
  bool halving = true;               // half-step pass for the FD error estimate

  double spatial_step(double R_P) const {
    return shrink_with_distance ? h_x / (1.0 + R_P / 100.0) : h_x;
  }
  double temporal_step(double R_P) const {
    return shrink_with_distance ? h_t / (1.0 + R_P / 100.0) : h_t;
  }
};

struct FieldSample {
  double A0 = 0.0;
  Vec3 A, E, B;
  double err_est = 0.0;     // combined quadrature + step-halving estimate
  double err_quad = 0.0;
  double err_fd = 0.0;
  bool warn = false;        // any warning threshold tripped
  bool near_cusp = false;   // direction within the beam band of a superluminal source
  Vec3 x_P;
  double t_P = 0.0;
  std::uint64_t config_hash = 0;
};

FieldSample field_from_potential(const SourceConfig& cfg, const SpacetimePoint& P,
                                 const QuadratureSpec& q, const FdPolicy& fd = {});

// Field samples at one position for many observation times, all evaluated
// in a single pass over one shared cell decomposition. Half-step error
// estimates are taken on the subset times[k] with k % halving_stride == 0
// (0 disables halving entirely).
std::vector<FieldSample> field_series(const SourceConfig& cfg, const Vec3& pos,
                                      std::span<const double> times, const QuadratureSpec& q,
                                      const FdPolicy& fd = {}, int halving_stride = 8);

// Conventional far-zone estimator (the textbook formula): uniform 1/R_P
// amplitude and linearized retardation t_ret = t_P - R_P + n_P . x,
//
//   B_conv = (1/R_P) \int d^3x  [curl j](x, t_ret).
//
// Valid for R_P >> r_u; for rotating superluminal sources it misses the
// nonspherically decaying part of the field.
Vec3 conventional_far_field(const SourceConfig& cfg, const SpacetimePoint& P,
                            const QuadratureSpec& q, double* err_est = nullptr);

// Exact-kernel volume integrals of the Jefimenko form; used as an
// independent oracle for the finite-difference field route.
struct JefimenkoField {
  Vec3 E, B;
  double err_est = 0.0;
};
JefimenkoField jefimenko_field(const SourceConfig& cfg, const SpacetimePoint& P,
                               const QuadratureSpec& q);

// Field jet on a surface: B, its spatial gradient and time derivative.
struct FieldJet {
  Vec3 B;
  Vec3 grad[3];  // grad[k] = gradient of B_k
  Vec3 dBdt;
};

class FieldProvider {
 public:
  virtual ~FieldProvider() = default;
  virtual FieldJet jet(const Vec3& x, double t) const = 0;
  virtual Vec3 field(const Vec3& x, double t) const = 0;
};

// Solver-backed provider: jets from fused finite-difference stencils of
// the retarded potential with the same step policy as the field solver.
class SolverFieldProvider : public FieldProvider {
 public:
  SolverFieldProvider(const SourceConfig& cfg, const QuadratureSpec& q, FdPolicy fd = {})
      : cfg_(cfg), q_(q), fd_(fd) {}
  FieldJet jet(const Vec3& x, double t) const override;
  Vec3 field(const Vec3& x, double t) const override;

 private:
  SourceConfig cfg_;
  QuadratureSpec q_;
  FdPolicy fd_;
};

// div B on a 6-point stencil of half-width h (diagnostic for the
// solenoidal invariant), normalized by |B| / h.
double div_b_residual(const SourceConfig& cfg, const SpacetimePoint& P, const QuadratureSpec& q,
                      double h, const FdPolicy& fd = {});

}  // namespace sfl
