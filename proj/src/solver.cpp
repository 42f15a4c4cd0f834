#include "sfl/solver.hpp"

#include <cmath>

#include "sfl/kinematics.hpp"
#include "sfl/reduce.hpp"

// Kernel evaluation strategy: for one observation event all requested
// spacetime offsets are evaluated in a single pass over one shared cell
// decomposition. The midpoint-rule error is then a smooth function of the
// observation point, so finite differences of neighboring evaluations see
// the true field derivatives rather than refinement-pattern noise.

namespace sfl {

namespace {

struct PatternCtx {
  bool harmonic = true;
  double m = 0.0, w = 0.0, W = 0.0;
  double inv_s2 = 0.0, bump_cut = 0.0;
  double switch_on = 0.0;

  explicit PatternCtx(const SourceConfig& cfg) {
    harmonic = cfg.pattern == AzimuthalPattern::harmonic;
    m = static_cast<double>(cfg.m);
    w = cfg.omega;
    W = cfg.capital_omega;
    if (!harmonic) {
      inv_s2 = 1.0 / (cfg.bump_sigma * cfg.bump_sigma);
      bump_cut = 6.0697 * cfg.bump_sigma;
    }
    switch_on = cfg.switch_on_time;
  }
};

struct Pat {
  double f, f_t, f_phi, f_tt, f_tphi;
};

inline bool pat_eval(const PatternCtx& pc, double phi, double t, Pat& out) {
  if (t < pc.switch_on) return false;
  double cb = 1.0, sb = 0.0;
  if (pc.W != 0.0) {
    cb = std::cos(pc.W * t);
    sb = std::sin(pc.W * t);
  }
  if (pc.harmonic) {
    const double a = pc.m * (phi - pc.w * t);
    const double ca = std::cos(a), sa = std::sin(a);
    const double mw = pc.m * pc.w;
    out.f = ca * cb;
    out.f_t = mw * sa * cb - pc.W * ca * sb;
    out.f_phi = -pc.m * sa * cb;
    out.f_tt = -(mw * mw + pc.W * pc.W) * ca * cb - 2.0 * mw * pc.W * sa * sb;
    out.f_tphi = pc.m * (mw * ca * cb + pc.W * sa * sb);
    return true;
  }
  const double ph = std::remainder(phi - pc.w * t, two_pi);
  if (std::abs(ph) > pc.bump_cut) return false;
  const double g = std::exp(-0.5 * ph * ph * pc.inv_s2);
  const double g1 = -ph * pc.inv_s2 * g;
  const double g2 = (ph * ph * pc.inv_s2 - 1.0) * pc.inv_s2 * g;
  out.f = g * cb;
  out.f_t = -pc.w * g1 * cb - pc.W * g * sb;
  out.f_phi = g1 * cb;
  out.f_tt = pc.w * pc.w * g2 * cb + 2.0 * pc.w * pc.W * g1 * sb - pc.W * pc.W * g * cb;
  out.f_tphi = -pc.w * g2 * cb - pc.W * g1 * sb;
  return true;
}

// Per-cell data for the retarded kernels, Cartesian where possible.
struct CellData {
  double x, y, z;
  double phi;
  double w;        // measure
  Vec3 sj;         // j = sj * f_t
  double D1;       // rho = -(D1 * f + sphi_r * f_phi)
  double sphi_r;
  Vec3 W1, W2;     // curl j = W1 * f_t + W2 * f_tphi
};

std::vector<CellData> prepare_cells(const SourceConfig& cfg, const std::vector<SourceCell>& cells) {
  std::vector<CellData> data(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    const SourceCell& c = cells[i];
    CellData d;
    const double cp = std::cos(c.phi), sp = std::sin(c.phi);
    d.x = c.r * cp;
    d.y = c.r * sp;
    d.z = c.z;
    d.phi = c.phi;
    d.w = c.measure;
    const ProfileEval pv = eval_profile(cfg, c.r, c.z);
    d.sj = cyl_vector_to_cartesian(pv.s, c.phi);
    d.D1 = pv.ds_dr.x + pv.s.x / c.r + pv.ds_dz.z;
    d.sphi_r = pv.s.y / c.r;
    const Vec3 w1{-pv.ds_dz.y, pv.ds_dz.x - pv.ds_dr.z, pv.s.y / c.r + pv.ds_dr.y};
    const Vec3 w2{pv.s.z / c.r, 0.0, -pv.s.x / c.r};
    d.W1 = cyl_vector_to_cartesian(w1, c.phi);
    d.W2 = cyl_vector_to_cartesian(w2, c.phi);
    data[i] = d;
  });
  // Drop cells with no amplitude at all (possible for clipped gaussians).
  std::vector<CellData> kept;
  kept.reserve(data.size());
  for (const auto& d : data)
    if (d.sj.norm2() != 0.0 || d.D1 != 0.0 || d.sphi_r != 0.0) kept.push_back(d);
  return kept;
}

struct ObsPoint {
  double x, y, z, t;
};

std::vector<ObsPoint> absolute_offsets(const SpacetimePoint& P,
                                       std::span<const SpacetimeOffset> offsets) {
  std::vector<ObsPoint> pts(offsets.size());
  for (std::size_t i = 0; i < offsets.size(); ++i)
    pts[i] = {P.pos.x + offsets[i].dx.x, P.pos.y + offsets[i].dx.y, P.pos.z + offsets[i].dx.z,
              P.t + offsets[i].dt};
  return pts;
}

// A^mu for every offset: slots [4 * o + {0:A0, 1..3:A}].
void eval_potentials(const PatternCtx& pc, const std::vector<CellData>& cells,
                     const std::vector<ObsPoint>& pts, double* out) {
  const std::size_t n_slots = 4 * pts.size();
  deterministic_slot_sum(cells.size(), n_slots, out, [&](std::size_t i, double* slots) {
    const CellData& d = cells[i];
    for (std::size_t o = 0; o < pts.size(); ++o) {
      const ObsPoint& p = pts[o];
      const double dx = p.x - d.x, dy = p.y - d.y, dz = p.z - d.z;
      const double R = std::sqrt(dx * dx + dy * dy + dz * dz);
      const double t_ret = p.t - R;
      Pat pe;
      if (!pat_eval(pc, d.phi, t_ret, pe)) continue;
      const double k = d.w / R;
      const double rho = -(d.D1 * pe.f + d.sphi_r * pe.f_phi);
      slots[4 * o + 0] += k * rho;
      slots[4 * o + 1] += k * d.sj.x * pe.f_t;
      slots[4 * o + 2] += k * d.sj.y * pe.f_t;
      slots[4 * o + 3] += k * d.sj.z * pe.f_t;
    }
  });
}

// Retarded curl integrals: slots [3 * o]. Exact kernel or the far-zone
// (uniform 1/R_P, linearized retardation) kernel.
void eval_curl(const PatternCtx& pc, const std::vector<CellData>& cells,
               const std::vector<ObsPoint>& pts, bool far_zone, double* out) {
  const std::size_t n_slots = 3 * pts.size();
  std::vector<double> RP(pts.size()), nx(pts.size()), ny(pts.size()), nz(pts.size());
  for (std::size_t o = 0; o < pts.size(); ++o) {
    const double R = std::sqrt(pts[o].x * pts[o].x + pts[o].y * pts[o].y + pts[o].z * pts[o].z);
    RP[o] = R;
    nx[o] = pts[o].x / R;
    ny[o] = pts[o].y / R;
    nz[o] = pts[o].z / R;
  }
  deterministic_slot_sum(cells.size(), n_slots, out, [&](std::size_t i, double* slots) {
    const CellData& d = cells[i];
    for (std::size_t o = 0; o < pts.size(); ++o) {
      const ObsPoint& p = pts[o];
      double k, t_ret;
      if (far_zone) {
        t_ret = p.t - RP[o] + (nx[o] * d.x + ny[o] * d.y + nz[o] * d.z);
        k = d.w / RP[o];
      } else {
        const double dx = p.x - d.x, dy = p.y - d.y, dz = p.z - d.z;
        const double R = std::sqrt(dx * dx + dy * dy + dz * dz);
        t_ret = p.t - R;
        k = d.w / R;
      }
      Pat pe;
      if (!pat_eval(pc, d.phi, t_ret, pe)) continue;
      slots[3 * o + 0] += k * (d.W1.x * pe.f_t + d.W2.x * pe.f_tphi);
      slots[3 * o + 1] += k * (d.W1.y * pe.f_t + d.W2.y * pe.f_tphi);
      slots[3 * o + 2] += k * (d.W1.z * pe.f_t + d.W2.z * pe.f_tphi);
    }
  });
}

// Jefimenko form with the exact kernel: slots [6 * o + {0..2:E, 3..5:B}].
void eval_jefimenko(const PatternCtx& pc, const std::vector<CellData>& cells,
                    const std::vector<ObsPoint>& pts, double* out) {
  const std::size_t n_slots = 6 * pts.size();
  deterministic_slot_sum(cells.size(), n_slots, out, [&](std::size_t i, double* slots) {
    const CellData& d = cells[i];
    for (std::size_t o = 0; o < pts.size(); ++o) {
      const ObsPoint& p = pts[o];
      const double dx = p.x - d.x, dy = p.y - d.y, dz = p.z - d.z;
      const double R = std::sqrt(dx * dx + dy * dy + dz * dz);
      const double t_ret = p.t - R;
      Pat pe;
      if (!pat_eval(pc, d.phi, t_ret, pe)) continue;
      const double inv_R = 1.0 / R;
      const Vec3 n{dx * inv_R, dy * inv_R, dz * inv_R};
      const double rho = -(d.D1 * pe.f + d.sphi_r * pe.f_phi);
      const double rho_t = -(d.D1 * pe.f_t + d.sphi_r * pe.f_tphi);
      const Vec3 j = d.sj * pe.f_t;
      const Vec3 j_t = d.sj * pe.f_tt;
      const Vec3 E = n * (rho * inv_R * inv_R + rho_t * inv_R) - j_t * inv_R;
      const Vec3 B = j.cross(n) * (inv_R * inv_R) + j_t.cross(n) * inv_R;
      slots[6 * o + 0] += d.w * E.x;
      slots[6 * o + 1] += d.w * E.y;
      slots[6 * o + 2] += d.w * E.z;
      slots[6 * o + 3] += d.w * B.x;
      slots[6 * o + 4] += d.w * B.y;
      slots[6 * o + 5] += d.w * B.z;
    }
  });
}

void check_outside_support(const SourceConfig& cfg, const Vec3& x_P) {
  const Cylindrical c = to_cylindrical(x_P);
  const double pad = cfg.h_div();
  if (c.r >= cfg.r_l - pad && c.r <= cfg.r_u + pad && c.z >= cfg.z_min - pad &&
      c.z <= cfg.z_max + pad)
    throw GeometryError("retarded_potential: observation point inside the source support");
}

// Relative quadrature error from a center-point evaluation on the next
// coarser decomposition (level L-1, or a halved base grid at L = 0).
double quadrature_error(const SourceConfig& cfg, const QuadratureSpec& q, const PatternCtx& pc,
                        const SpacetimePoint& P, const double* fine_center4) {
  std::vector<SourceCell> coarse_cells;
  if (q.max_refine >= 1)
    coarse_cells = build_cells(cfg, q, P.pos, q.max_refine - 1);
  else
    coarse_cells = build_cells(cfg, coarsened(q), P.pos, 0);
  const std::vector<CellData> coarse = prepare_cells(cfg, coarse_cells);
  const std::vector<ObsPoint> pt = {{P.pos.x, P.pos.y, P.pos.z, P.t}};
  double c4[4] = {0, 0, 0, 0};
  eval_potentials(pc, coarse, pt, c4);
  double dnum = 0.0, dden = 0.0;
  for (int k = 0; k < 4; ++k) {
    dnum += (fine_center4[k] - c4[k]) * (fine_center4[k] - c4[k]);
    dden += fine_center4[k] * fine_center4[k];
  }
  if (dden == 0.0) return dnum == 0.0 ? 0.0 : 1.0;
  return 2.0 * std::sqrt(dnum / dden);
}

bool direction_near_beam(const SourceConfig& cfg, const Vec3& x_P) {
  if (!cfg.superluminal()) return false;
  const double R = x_P.norm();
  if (R == 0.0) return false;
  const double theta = std::acos(std::clamp(x_P.z / R, -1.0, 1.0));
  for (double d : {-0.02, 0.0, 0.02})
    if (beam_interval_contains(theta + d, cfg.r_l, cfg.r_u, cfg.omega)) return true;
  return false;
}

}  // namespace

std::vector<PotentialResult> retarded_potential_multi(const SourceConfig& cfg,
                                                      const SpacetimePoint& P,
                                                      std::span<const SpacetimeOffset> offsets,
                                                      const QuadratureSpec& q) {
  check_outside_support(cfg, P.pos);
  const PatternCtx pc(cfg);
  const std::vector<SourceCell> cells = build_cells(cfg, q, P.pos);
  const std::vector<CellData> data = prepare_cells(cfg, cells);

  // Append the nominal point for the error estimate.
  std::vector<SpacetimeOffset> all(offsets.begin(), offsets.end());
  all.push_back({});
  const std::vector<ObsPoint> pts = absolute_offsets(P, all);

  std::vector<double> slots(4 * pts.size(), 0.0);
  eval_potentials(pc, data, pts, slots.data());
  const double err = quadrature_error(cfg, q, pc, P, slots.data() + 4 * offsets.size());

  std::vector<PotentialResult> out(offsets.size());
  for (std::size_t o = 0; o < offsets.size(); ++o) {
    out[o].A0 = slots[4 * o + 0];
    out[o].A = {slots[4 * o + 1], slots[4 * o + 2], slots[4 * o + 3]};
    out[o].err_est = err;
  }
  return out;
}

PotentialResult retarded_potential(const SourceConfig& cfg, const SpacetimePoint& P,
                                   const QuadratureSpec& q) {
  const SpacetimeOffset center{};
  return retarded_potential_multi(cfg, P, {&center, 1}, q)[0];
}

namespace {

struct StencilFields {
  Vec3 E, B;
};

// E and B from first differences of A^mu given the 15 evaluations
// {center, +-h e_i, t +- h_t}; layout must match build order below.
StencilFields assemble_fields(const std::vector<PotentialResult>& r, double h, double h_t,
                              std::size_t base) {
  // base + 0..5: +x,-x,+y,-y,+z,-z ; base+6,7: +t,-t
  StencilFields f;
  const auto& px = r[base + 0];
  const auto& mx = r[base + 1];
  const auto& py = r[base + 2];
  const auto& my = r[base + 3];
  const auto& pz = r[base + 4];
  const auto& mz = r[base + 5];
  const auto& pt = r[base + 6];
  const auto& mt = r[base + 7];
  const double i2h = 1.0 / (2.0 * h);
  const double i2t = 1.0 / (2.0 * h_t);
  const Vec3 gradA0{(px.A0 - mx.A0) * i2h, (py.A0 - my.A0) * i2h, (pz.A0 - mz.A0) * i2h};
  const Vec3 dAdt = (pt.A - mt.A) * i2t;
  f.E = -gradA0 - dAdt;
  f.B = {(py.A.z - my.A.z) * i2h - (pz.A.y - mz.A.y) * i2h,
         (pz.A.x - mz.A.x) * i2h - (px.A.z - mx.A.z) * i2h,
         (px.A.y - mx.A.y) * i2h - (py.A.x - my.A.x) * i2h};
  return f;
}

}  // namespace

FieldSample field_from_potential(const SourceConfig& cfg, const SpacetimePoint& P,
                                 const QuadratureSpec& q, const FdPolicy& fd) {
  const double R_P = P.pos.norm();
  const double h = fd.spatial_step(R_P);
  const double h_t = fd.temporal_step(R_P);

  std::vector<SpacetimeOffset> offs;
  offs.push_back({});  // center
  auto push_block = [&](double hs, double ht) {
    offs.push_back({{+hs, 0, 0}, 0});
    offs.push_back({{-hs, 0, 0}, 0});
    offs.push_back({{0, +hs, 0}, 0});
    offs.push_back({{0, -hs, 0}, 0});
    offs.push_back({{0, 0, +hs}, 0});
    offs.push_back({{0, 0, -hs}, 0});
    offs.push_back({{0, 0, 0}, +ht});
    offs.push_back({{0, 0, 0}, -ht});
  };
  push_block(h, h_t);
  if (fd.halving) push_block(0.5 * h, 0.5 * h_t);

  const auto r = retarded_potential_multi(cfg, P, offs, q);
  const StencilFields full = assemble_fields(r, h, h_t, 1);

  FieldSample s;
  s.A0 = r[0].A0;
  s.A = r[0].A;
  s.E = full.E;
  s.B = full.B;
  if (fd.halving) {
    const StencilFields half = assemble_fields(r, 0.5 * h, 0.5 * h_t, 9);
    const double dnum = (full.E - half.E).norm() + (full.B - half.B).norm();
    const double dden = half.E.norm() + half.B.norm();
    s.err_fd = dden > 0.0 ? dnum / dden : 0.0;
  }
  s.err_quad = r[0].err_est;
  s.err_est = s.err_quad + s.err_fd;
  s.warn = s.err_quad > 1e-2 || s.err_fd > 0.05;
  s.near_cusp = direction_near_beam(cfg, P.pos);
  s.x_P = P.pos;
  s.t_P = P.t;
  s.config_hash = cfg.hash();
  return s;
}

std::vector<FieldSample> field_series(const SourceConfig& cfg, const Vec3& pos,
                                      std::span<const double> times, const QuadratureSpec& q,
                                      const FdPolicy& fd, int halving_stride) {
  check_outside_support(cfg, pos);
  const std::size_t n = times.size();
  if (n == 0) return {};
  const double R_P = pos.norm();
  const double h = fd.spatial_step(R_P);
  const double h_t = fd.temporal_step(R_P);
  const PatternCtx pc(cfg);
  const std::vector<SourceCell> cells = build_cells(cfg, q, pos);
  const std::vector<CellData> data = prepare_cells(cfg, cells);

  // Offsets: per sample either 9 (center + h block) or 17 (+ half-step
  // block); plus one trailing center at times[0] for the error estimate.
  std::vector<SpacetimeOffset> offs;
  std::vector<std::size_t> sample_base(n);
  std::vector<bool> halved(n, false);
  auto push_block = [&](double dt, double hs, double ht) {
    offs.push_back({{+hs, 0, 0}, dt});
    offs.push_back({{-hs, 0, 0}, dt});
    offs.push_back({{0, +hs, 0}, dt});
    offs.push_back({{0, -hs, 0}, dt});
    offs.push_back({{0, 0, +hs}, dt});
    offs.push_back({{0, 0, -hs}, dt});
    offs.push_back({{0, 0, 0}, dt + ht});
    offs.push_back({{0, 0, 0}, dt - ht});
  };
  for (std::size_t k = 0; k < n; ++k) {
    const double dt = times[k] - times[0];
    sample_base[k] = offs.size();
    offs.push_back({{0, 0, 0}, dt});
    push_block(dt, h, h_t);
    if (fd.halving && halving_stride > 0 && k % halving_stride == 0) {
      halved[k] = true;
      push_block(dt, 0.5 * h, 0.5 * h_t);
    }
  }

  const SpacetimePoint P0{pos, times[0]};
  const std::vector<ObsPoint> pts = absolute_offsets(P0, offs);
  std::vector<double> slots(4 * pts.size(), 0.0);
  eval_potentials(pc, data, pts, slots.data());

  std::vector<PotentialResult> r(offs.size());
  for (std::size_t o = 0; o < offs.size(); ++o) {
    r[o].A0 = slots[4 * o + 0];
    r[o].A = {slots[4 * o + 1], slots[4 * o + 2], slots[4 * o + 3]};
  }
  const double center0[4] = {r[0].A0, r[0].A.x, r[0].A.y, r[0].A.z};
  const double err_quad = quadrature_error(cfg, q, pc, P0, center0);

  const bool near = direction_near_beam(cfg, pos);
  const std::uint64_t hash = cfg.hash();
  std::vector<FieldSample> out(n);
  double carry_fd = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t b = sample_base[k];
    const StencilFields full = assemble_fields(r, h, h_t, b + 1);
    FieldSample s;
    s.A0 = r[b].A0;
    s.A = r[b].A;
    s.E = full.E;
    s.B = full.B;
    if (halved[k]) {
      const StencilFields half = assemble_fields(r, 0.5 * h, 0.5 * h_t, b + 9);
      const double dnum = (full.E - half.E).norm() + (full.B - half.B).norm();
      const double dden = half.E.norm() + half.B.norm();
      carry_fd = dden > 0.0 ? dnum / dden : 0.0;
    }
    s.err_fd = carry_fd;
    s.err_quad = err_quad;
    s.err_est = err_quad + s.err_fd;
    s.warn = s.err_quad > 1e-2 || s.err_fd > 0.05;
    s.near_cusp = near;
    s.x_P = pos;
    s.t_P = times[k];
    s.config_hash = hash;
    out[k] = s;
  }
  return out;
}

Vec3 conventional_far_field(const SourceConfig& cfg, const SpacetimePoint& P,
                            const QuadratureSpec& q, double* err_est) {
  check_outside_support(cfg, P.pos);
  const PatternCtx pc(cfg);
  const std::vector<SourceCell> cells = build_cells(cfg, q, P.pos);
  const std::vector<CellData> data = prepare_cells(cfg, cells);
  const std::vector<ObsPoint> pt = {{P.pos.x, P.pos.y, P.pos.z, P.t}};
  double slots[3] = {0, 0, 0};
  eval_curl(pc, data, pt, /*far_zone=*/true, slots);
  if (err_est) {
    std::vector<SourceCell> coarse_cells = q.max_refine >= 1
                                               ? build_cells(cfg, q, P.pos, q.max_refine - 1)
                                               : build_cells(cfg, coarsened(q), P.pos, 0);
    const std::vector<CellData> coarse = prepare_cells(cfg, coarse_cells);
    double c3[3] = {0, 0, 0};
    eval_curl(pc, coarse, pt, true, c3);
    double dnum = 0.0, dden = 0.0;
    for (int k = 0; k < 3; ++k) {
      dnum += (slots[k] - c3[k]) * (slots[k] - c3[k]);
      dden += slots[k] * slots[k];
    }
    *err_est = dden > 0.0 ? 2.0 * std::sqrt(dnum / dden) : 0.0;
  }
  return {slots[0], slots[1], slots[2]};
}

JefimenkoField jefimenko_field(const SourceConfig& cfg, const SpacetimePoint& P,
                               const QuadratureSpec& q) {
  check_outside_support(cfg, P.pos);
  const PatternCtx pc(cfg);
  const std::vector<SourceCell> cells = build_cells(cfg, q, P.pos);
  const std::vector<CellData> data = prepare_cells(cfg, cells);
  const std::vector<ObsPoint> pt = {{P.pos.x, P.pos.y, P.pos.z, P.t}};
  double slots[6] = {0, 0, 0, 0, 0, 0};
  eval_jefimenko(pc, data, pt, slots);

  std::vector<SourceCell> coarse_cells = q.max_refine >= 1
                                             ? build_cells(cfg, q, P.pos, q.max_refine - 1)
                                             : build_cells(cfg, coarsened(q), P.pos, 0);
  const std::vector<CellData> coarse = prepare_cells(cfg, coarse_cells);
  double c6[6] = {0, 0, 0, 0, 0, 0};
  eval_jefimenko(pc, coarse, pt, c6);
  double dnum = 0.0, dden = 0.0;
  for (int k = 0; k < 6; ++k) {
    dnum += (slots[k] - c6[k]) * (slots[k] - c6[k]);
    dden += slots[k] * slots[k];
  }
  JefimenkoField jf;
  jf.E = {slots[0], slots[1], slots[2]};
  jf.B = {slots[3], slots[4], slots[5]};
  jf.err_est = dden > 0.0 ? 2.0 * std::sqrt(dnum / dden) : 0.0;
  return jf;
}

// ---------------------------------------------------------------------------
// Field jets on a surface

FieldJet SolverFieldProvider::jet(const Vec3& x, double t) const {
  const double R = x.norm();
  const double h = fd_.spatial_step(R);
  const double h_t = fd_.temporal_step(R);

  // Offset layout:
  //   0            : center
  //   1..6         : +-h e_i              (first differences, B)
  //   7..18        : +-h e_i +- h e_j, i<j (cross second differences)
  //   19..30       : (+-h e_i, +-h_t)      (dB/dt via curl at t +- h_t)
  std::vector<SpacetimeOffset> offs;
  offs.push_back({});
  const Vec3 e[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int i = 0; i < 3; ++i) {
    offs.push_back({e[i] * h, 0});
    offs.push_back({e[i] * -h, 0});
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      for (int si = -1; si <= 1; si += 2)
        for (int sj = -1; sj <= 1; sj += 2)
          offs.push_back({e[i] * (si * h) + e[j] * (sj * h), 0});
  for (int i = 0; i < 3; ++i)
    for (int si = -1; si <= 1; si += 2)
      for (int st = -1; st <= 1; st += 2)
        offs.push_back({e[i] * (si * h), st * h_t});

  const auto r = retarded_potential_multi(cfg_, {x, t}, offs, q_);

  auto A = [&](std::size_t k) { return r[k].A; };
  const double i2h = 1.0 / (2.0 * h);
  const double ih2 = 1.0 / (h * h);
  const double i4h2 = 1.0 / (4.0 * h * h);
  const double i2t = 1.0 / (2.0 * h_t);

  // First derivatives dA/dx_i at the center.
  Vec3 d1[3];
  for (int i = 0; i < 3; ++i) d1[i] = (A(1 + 2 * i) - A(2 + 2 * i)) * i2h;

  FieldJet jet;
  jet.B = {d1[1].z - d1[2].y, d1[2].x - d1[0].z, d1[0].y - d1[1].x};

  // Second derivatives d2A/dx_i dx_j.
  Vec3 d2[3][3];
  for (int i = 0; i < 3; ++i)
    d2[i][i] = (A(1 + 2 * i) + A(2 + 2 * i) - A(0) * 2.0) * ih2;
  std::size_t base = 7;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      // push order was (-,-), (-,+), (+,-), (+,+):
      // cross derivative = [f(+,+) - f(+,-) - f(-,+) + f(-,-)] / (4 h^2)
      const Vec3 v =
          (A(base + 3) - A(base + 2) - A(base + 1) + A(base + 0)) * i4h2;
      d2[i][j] = v;
      d2[j][i] = v;
      base += 4;
    }

  // grad[k][i] = d/dx_i (curl A)_k
  for (int i = 0; i < 3; ++i) {
    const Vec3 dB{d2[i][1].z - d2[i][2].y, d2[i][2].x - d2[i][0].z, d2[i][0].y - d2[i][1].x};
    if (i == 0) {
      jet.grad[0].x = dB.x; jet.grad[1].x = dB.y; jet.grad[2].x = dB.z;
    } else if (i == 1) {
      jet.grad[0].y = dB.x; jet.grad[1].y = dB.y; jet.grad[2].y = dB.z;
    } else {
      jet.grad[0].z = dB.x; jet.grad[1].z = dB.y; jet.grad[2].z = dB.z;
    }
  }

  // dB/dt from curls at t +- h_t. Offsets 19..30: (e_i, si, st) in push
  // order si = -1 first, st = -1 first.
  auto Aoff = [&](int i, int si, int st) {
    const std::size_t idx = 19 + static_cast<std::size_t>(i) * 4 +
                            (si > 0 ? 2 : 0) + (st > 0 ? 1 : 0);
    return r[idx].A;
  };
  Vec3 d1p[3], d1m[3];
  for (int i = 0; i < 3; ++i) {
    d1p[i] = (Aoff(i, +1, +1) - Aoff(i, -1, +1)) * i2h;
    d1m[i] = (Aoff(i, +1, -1) - Aoff(i, -1, -1)) * i2h;
  }
  const Vec3 Bp{d1p[1].z - d1p[2].y, d1p[2].x - d1p[0].z, d1p[0].y - d1p[1].x};
  const Vec3 Bm{d1m[1].z - d1m[2].y, d1m[2].x - d1m[0].z, d1m[0].y - d1m[1].x};
  jet.dBdt = (Bp - Bm) * i2t;
  return jet;
}

Vec3 SolverFieldProvider::field(const Vec3& x, double t) const {
  const double R = x.norm();
  const double h = fd_.spatial_step(R);
  std::vector<SpacetimeOffset> offs;
  const Vec3 e[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int i = 0; i < 3; ++i) {
    offs.push_back({e[i] * h, 0});
    offs.push_back({e[i] * -h, 0});
  }
  const auto r = retarded_potential_multi(cfg_, {x, t}, offs, q_);
  const double i2h = 1.0 / (2.0 * h);
  Vec3 d1[3];
  for (int i = 0; i < 3; ++i) d1[i] = (r[2 * i].A - r[2 * i + 1].A) * i2h;
  return {d1[1].z - d1[2].y, d1[2].x - d1[0].z, d1[0].y - d1[1].x};
}

double div_b_residual(const SourceConfig& cfg, const SpacetimePoint& P, const QuadratureSpec& q,
                      double h, const FdPolicy& fd) {
  const double hb = fd.spatial_step(P.pos.norm());
  const Vec3 e[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  // B at x +- h e_i, each from a first-difference curl with step hb; all 36
  // evaluations share one cell decomposition.
  std::vector<SpacetimeOffset> offs;
  for (int i = 0; i < 3; ++i)
    for (int si = -1; si <= 1; si += 2)
      for (int j = 0; j < 3; ++j)
        for (int sj = -1; sj <= 1; sj += 2)
          offs.push_back({e[i] * (si * h) + e[j] * (sj * hb), 0});
  const auto r = retarded_potential_multi(cfg, P, offs, q);
  const double i2hb = 1.0 / (2.0 * hb);
  auto B_at = [&](int block) {
    const std::size_t b = static_cast<std::size_t>(block) * 6;
    Vec3 d1[3];
    // push order per axis: sj = -1 first
    for (int j = 0; j < 3; ++j) d1[j] = (r[b + 2 * j + 1].A - r[b + 2 * j].A) * i2hb;
    return Vec3{d1[1].z - d1[2].y, d1[2].x - d1[0].z, d1[0].y - d1[1].x};
  };
  double div = 0.0;
  double bnorm = 0.0;
  for (int i = 0; i < 3; ++i) {
    // push order per axis: si = -1 block first
    const Vec3 bm = B_at(2 * i);
    const Vec3 bp = B_at(2 * i + 1);
    const double comp = i == 0 ? (bp.x - bm.x) : i == 1 ? (bp.y - bm.y) : (bp.z - bm.z);
    div += comp / (2.0 * h);
    bnorm = std::max(bnorm, std::max(bp.norm(), bm.norm()));
  }
  if (bnorm == 0.0) return 0.0;
  return std::abs(div) * h / bnorm;
}

}  // namespace sfl
