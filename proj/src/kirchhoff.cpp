#include "sfl/kirchhoff.hpp"

#include <algorithm>
#include <cmath>

#include "sfl/reduce.hpp"

namespace sfl {

double SurfaceMesh::total_weight() const {
  Accum a;
  for (const auto& n : nodes) a.add(n.weight);
  return a.value();
}

namespace {

// theta rows as [lo, hi) intervals; weights are exact in cos(theta) and the
// node sits at the centroid of the measure (midpoint in cos theta).
SurfaceMesh build_sphere(const Vec3& center, double radius, const std::vector<double>& theta_edges,
                         int n_phi, int normal_sign) {
  SurfaceMesh mesh;
  mesh.center = center;
  mesh.radius = radius;
  const double dphi = two_pi / n_phi;
  mesh.nodes.reserve((theta_edges.size() - 1) * n_phi);
  for (std::size_t it = 0; it + 1 < theta_edges.size(); ++it) {
    const double c0 = std::cos(theta_edges[it]);
    const double c1 = std::cos(theta_edges[it + 1]);
    const double cmid = 0.5 * (c0 + c1);
    const double theta = std::acos(std::clamp(cmid, -1.0, 1.0));
    const double w_theta = (c0 - c1) * radius * radius * dphi;  // c0 > c1 for increasing theta
    for (int ip = 0; ip < n_phi; ++ip) {
      const double phi = (ip + 0.5) * dphi;
      SurfaceMesh::Node node;
      const Vec3 rhat = to_cartesian(Spherical{1.0, theta, phi});
      node.pos = center + rhat * radius;
      node.normal = rhat * static_cast<double>(normal_sign);
      node.weight = w_theta;
      mesh.nodes.push_back(node);
    }
  }
  return mesh;
}

}  // namespace

SurfaceMesh SurfaceMesh::sphere(const Vec3& center, double radius, int n_theta, int n_phi,
                                int normal_sign) {
  if (n_theta < 2 || n_phi < 2)
    throw InvariantError("surface mesh invariant: counts must be >= 2");
  std::vector<double> edges(n_theta + 1);
  for (int i = 0; i <= n_theta; ++i) edges[i] = pi * i / n_theta;
  return build_sphere(center, radius, edges, n_phi, normal_sign);
}

SurfaceMesh SurfaceMesh::sphere_banded(const Vec3& center, double radius, int n_theta, int n_phi,
                                       double band_center, double band_halfwidth, int band_factor,
                                       int normal_sign) {
  if (n_theta < 2 || n_phi < 2)
    throw InvariantError("surface mesh invariant: counts must be >= 2");
  if (band_factor < 1) band_factor = 1;
  std::vector<double> edges;
  for (int i = 0; i < n_theta; ++i) {
    const double a = pi * i / n_theta;
    const double b = pi * (i + 1) / n_theta;
    const double mid = 0.5 * (a + b);
    // split both the band around band_center and its mirror image
    const bool in_band = std::abs(mid - band_center) <= band_halfwidth ||
                         std::abs(mid - (pi - band_center)) <= band_halfwidth;
    const int n_sub = in_band ? band_factor : 1;
    for (int k = 0; k < n_sub; ++k) edges.push_back(a + (b - a) * k / n_sub);
  }
  edges.push_back(pi);
  return build_sphere(center, radius, edges, n_phi, normal_sign);
}

Vec3 source_term(const SourceConfig& cfg, const SpacetimePoint& P, const QuadratureSpec& q,
                 double* err_est) {
  return conventional_far_field(cfg, P, q, err_est);
}

Vec3 boundary_term(const FieldProvider& provider, const SurfaceMesh& mesh, const Vec3& x_P,
                   double t_P) {
  // Guard: the kernels are singular on the surface itself.
  const double cell_diam =
      mesh.radius * std::sqrt(4.0 * pi / std::max<std::size_t>(1, mesh.nodes.size())) * 2.0;
  const double dist_from_sigma = std::abs((x_P - mesh.center).norm() - mesh.radius);
  if (dist_from_sigma < cell_diam)
    throw GeometryError("boundary_term: observation point within one mesh cell of the surface");

  const std::size_t n = mesh.nodes.size();
  std::vector<Vec3> contrib(n);
  parallel_for(n, [&](std::size_t i) {
    const auto& node = mesh.nodes[i];
    const Vec3 d = node.pos - x_P;  // Rhat points observer -> surface
    const double R = d.norm();
    const double t_ret = t_P - R;
    if (t_ret < 0.0) {
      contrib[i] = {};
      return;
    }
    const FieldJet jet = provider.jet(node.pos, t_ret);
    const Vec3 rhat = d / R;
    const double rn = rhat.dot(node.normal);
    Vec3 v;
    // dS . ( [grad B_k]/R + (Rhat/R^2)[B_k] + (Rhat/R)[dB_k/dt] )
    v.x = node.normal.dot(jet.grad[0]) / R + rn * (jet.B.x / (R * R) + jet.dBdt.x / R);
    v.y = node.normal.dot(jet.grad[1]) / R + rn * (jet.B.y / (R * R) + jet.dBdt.y / R);
    v.z = node.normal.dot(jet.grad[2]) / R + rn * (jet.B.z / (R * R) + jet.dBdt.z / R);
    contrib[i] = v * (node.weight / (4.0 * pi));
  });

  double out[3];
  deterministic_slot_sum(n, 3, out, [&](std::size_t i, double* slots) {
    slots[0] += contrib[i].x;
    slots[1] += contrib[i].y;
    slots[2] += contrib[i].z;
  });
  return {out[0], out[1], out[2]};
}

TermDecomposition identity_check(const SourceConfig& cfg, const SpacetimePoint& P, double R_sigma,
                                 const QuadratureSpec& q, int mesh_n_theta, int mesh_n_phi,
                                 int band_factor) {
  const double R_P = P.pos.norm();
  if (R_P >= R_sigma)
    throw GeometryError("identity_check: observation point must lie inside the sphere");
  if (cfg.r_u >= R_sigma || std::max(std::abs(cfg.z_min), std::abs(cfg.z_max)) >= R_sigma)
    throw GeometryError("identity_check: source support must lie inside the sphere");

  TermDecomposition td;
  double src_err = 0.0;
  td.source = source_term(cfg, P, q, &src_err);

  const FieldSample direct = field_from_potential(cfg, P, q);
  td.direct = direct.B;

  SurfaceMesh mesh;
  if (band_factor > 1 && cfg.superluminal()) {
    const double theta_c = std::asin(std::clamp(1.0 / (0.5 * (cfg.r_l + cfg.r_u) * cfg.omega), 0.0, 1.0));
    const double halfwidth = 5.0 * (cfg.z_max - cfg.z_min) / (R_sigma * std::max(0.1, std::sin(theta_c)));
    mesh = SurfaceMesh::sphere_banded({}, R_sigma, mesh_n_theta, mesh_n_phi, theta_c, halfwidth,
                                      band_factor);
  } else {
    mesh = SurfaceMesh::sphere({}, R_sigma, mesh_n_theta, mesh_n_phi);
  }
  SolverFieldProvider provider(cfg, q);
  td.boundary = boundary_term(provider, mesh, P.pos, P.t);

  const double dnorm = td.direct.norm();
  td.residual = dnorm > 0.0 ? (td.direct - td.source - td.boundary).norm() / dnorm : 0.0;
  const double snorm = td.source.norm();
  td.ratio = snorm > 0.0 ? td.boundary.norm() / snorm : 0.0;
  td.gap_ratio = snorm > 0.0 ? (td.direct - td.source).norm() / snorm : 0.0;
  td.err_est = direct.err_est + src_err;
  return td;
}

TwoSphereResult two_sphere_composite(const FieldProvider& provider, const Vec3& center,
                                     double R_inner, double R_outer, const Vec3& x_P, double t_P,
                                     int n_theta, int n_phi) {
  if (R_inner <= 0.0 || R_outer <= R_inner)
    throw GeometryError("two_sphere_composite: need 0 < R_inner < R_outer");
  const double rp = (x_P - center).norm();
  if (rp <= R_inner)
    throw GeometryError("two_sphere_composite: observation point must lie outside the inner sphere");

  // Normals out of the shell volume: inward on the inner sphere, outward on
  // the outer one.
  const SurfaceMesh inner = SurfaceMesh::sphere(center, R_inner, n_theta, n_phi, -1);
  const SurfaceMesh outer = SurfaceMesh::sphere(center, R_outer, n_theta, n_phi, +1);
  TwoSphereResult r;
  r.inner = boundary_term(provider, inner, x_P, t_P);
  r.outer = boundary_term(provider, outer, x_P, t_P);
  r.composite = r.inner + r.outer;
  return r;
}

}  // namespace sfl
