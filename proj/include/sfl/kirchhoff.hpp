#pragma once

#include <vector>

#include "sfl/solver.hpp"

// Source-term / boundary-term decomposition of the retarded solution for
// the field, and the two-sphere diffraction identity. The time integral of
// the surface term against the retarded Green's function is collapsed
// analytically, leaving the three-kernel Kirchhoff form
//
//   (1/4pi) \oint dS . ( [grad B_k]/R + (Rhat/R^2)[B_k] + (Rhat/R)[dB_k/dt] )
//
// with [.] evaluated at t = t_P - R, R = |x_P - x_S| and Rhat pointing
// from the observation point to the surface point. With outward normals
// this reproduces the interior field of a source-free sphere and vanishes
// for exterior observers (both validated in tests, not assumed).

namespace sfl {

struct SurfaceMesh {
  struct Node {
    Vec3 pos;
    Vec3 normal;   // oriented per mesh orientation
    double weight; // exact solid-angle cell area, includes R^2
  };
  Vec3 center;
  double radius = 0.0;
  std::vector<Node> nodes;

  double total_weight() const;

  // Product grid, exact per-cell weights, nodes at cell centroids in
  // cos(theta); poles excluded by construction. normal_sign +1 = outward.
  static SurfaceMesh sphere(const Vec3& center, double radius, int n_theta, int n_phi,
                            int normal_sign = +1);
  // Same with the polar band |theta - band_center| <= band_halfwidth
  // subdivided band_factor times (for the subbeam band).
  static SurfaceMesh sphere_banded(const Vec3& center, double radius, int n_theta, int n_phi,
                                   double band_center, double band_halfwidth, int band_factor,
                                   int normal_sign = +1);
};

// Far-zone volume source term of the retarded solution for B; same
// integral as conventional_far_field (definitional identity).
Vec3 source_term(const SourceConfig& cfg, const SpacetimePoint& P, const QuadratureSpec& q,
                 double* err_est = nullptr);

// Kirchhoff surface term. Throws GeometryError when x_P is within one
// mesh-cell diameter of the surface.
Vec3 boundary_term(const FieldProvider& provider, const SurfaceMesh& mesh, const Vec3& x_P,
                   double t_P);

struct TermDecomposition {
  Vec3 source;
  Vec3 boundary;
  Vec3 direct;
  double residual = 0.0;       // |direct - source - boundary| / |direct|
  double ratio = 0.0;          // |boundary| / |source|
  double gap_ratio = 0.0;      // |direct - source| / |source| (conventional-estimator gap)
  double err_est = 0.0;
};

// Evaluates all three terms of the identity at the same event; P and the
// source must lie inside the sphere of radius R_sigma.
TermDecomposition identity_check(const SourceConfig& cfg, const SpacetimePoint& P, double R_sigma,
                                 const QuadratureSpec& q, int mesh_n_theta = 64,
                                 int mesh_n_phi = 128, int band_factor = 1);

struct TwoSphereResult {
  Vec3 inner;      // integral over the inner sphere, normal into the shell volume's outside (toward center)
  Vec3 outer;      // integral over the outer sphere, outward normal
  Vec3 composite;  // inner + outer
};

// Composite surface integral over two concentric spheres enclosing the
// source, normals oriented out of the shell volume. For an observer
// outside the closed surface the composite vanishes while the individual
// integrals do not; for an observer between the spheres the composite
// reconstructs the field.
TwoSphereResult two_sphere_composite(const FieldProvider& provider, const Vec3& center,
                                     double R_inner, double R_outer, const Vec3& x_P, double t_P,
                                     int n_theta, int n_phi);

}  // namespace sfl
