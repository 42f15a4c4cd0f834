#include "sfl/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "sfl/kinematics.hpp"

namespace sfl {

void QuadratureSpec::validate() const {
  if (n_r < 2 || n_phi < 2 || n_z < 2)
    throw InvariantError("quadrature invariant: all grid counts must be >= 2");
  if (max_refine < 0) throw InvariantError("quadrature invariant: max_refine must be >= 0");
  if (phase_tol <= 0.0) throw InvariantError("quadrature invariant: phase_tol must be positive");
  if (filament_boost < 1.0)
    throw InvariantError("quadrature invariant: filament_boost must be >= 1");
}

QuadratureSpec coarsened(const QuadratureSpec& q) {
  QuadratureSpec c = q;
  c.n_r = std::max(2, q.n_r / 2);
  c.n_phi = std::max(2, q.n_phi / 2);
  c.n_z = std::max(2, q.n_z / 2);
  return c;
}

namespace {

struct Box {
  double r0, r1, phi0, phi1, z0, z1;
  double dr() const { return r1 - r0; }
  double dphi() const { return phi1 - phi0; }
  double dz() const { return z1 - z0; }
};

// Span of the retarded phase m(phi - omega t_ret) across the cell, from the
// eight corners (t_ret = t_P - R; the t_P part cancels in the span). The
// amplitude-modulation phase capital_omega * t_ret is included.
double phase_span(const SourceConfig& cfg, const Box& b, const Vec3& x_P) {
  const double m = cfg.pattern == AzimuthalPattern::harmonic ? cfg.m : 0.0;
  double lo = 1e300, hi = -1e300;
  double Rlo = 1e300, Rhi = -1e300;
  for (int i = 0; i < 8; ++i) {
    const double r = (i & 1) ? b.r1 : b.r0;
    const double phi = (i & 2) ? b.phi1 : b.phi0;
    const double z = (i & 4) ? b.z1 : b.z0;
    const double x = r * std::cos(phi) - x_P.x;
    const double y = r * std::sin(phi) - x_P.y;
    const double dz = z - x_P.z;
    const double R = std::sqrt(x * x + y * y + dz * dz);
    const double chi = m * (phi + cfg.omega * R);  // t_P-independent part of m(phi - omega t_ret)
    lo = std::min(lo, chi);
    hi = std::max(hi, chi);
    Rlo = std::min(Rlo, R);
    Rhi = std::max(Rhi, R);
  }
  double span = hi - lo + cfg.capital_omega * (Rhi - Rlo);
  if (cfg.pattern == AzimuthalPattern::bump && cfg.bump_sigma > 0.0) {
    // positional span relative to the bump width plays the role of phase
    span = std::max(span, (b.dphi() + cfg.omega * (Rhi - Rlo)) / cfg.bump_sigma * (pi / 4.0));
  }
  return span;
}

void emit(const SourceConfig& cfg, const QuadratureSpec& q, const Vec3& x_P, const Box& b,
          int level, int max_refine, std::vector<SourceCell>& out) {
  if (level < max_refine && phase_span(cfg, b, x_P) > q.phase_tol) {
    // split the dominating axis
    const double r_c = 0.5 * (b.r0 + b.r1);
    const double ext_r = cfg.omega * b.dr();
    const double ext_phi = b.dphi() * (1.0 + cfg.omega * r_c);
    const double ext_z = cfg.omega * b.dz();
    Box lo = b, hi = b;
    if (ext_phi >= ext_r && ext_phi >= ext_z) {
      const double mid = 0.5 * (b.phi0 + b.phi1);
      lo.phi1 = mid;
      hi.phi0 = mid;
    } else if (ext_z >= ext_r) {
      const double mid = 0.5 * (b.z0 + b.z1);
      lo.z1 = mid;
      hi.z0 = mid;
    } else {
      const double mid = 0.5 * (b.r0 + b.r1);
      lo.r1 = mid;
      hi.r0 = mid;
    }
    emit(cfg, q, x_P, lo, level + 1, max_refine, out);
    emit(cfg, q, x_P, hi, level + 1, max_refine, out);
    return;
  }
  SourceCell cell;
  cell.r = 0.5 * (b.r0 + b.r1);
  cell.phi = 0.5 * (b.phi0 + b.phi1);
  cell.z = 0.5 * (b.z0 + b.z1);
  cell.dr = b.dr();
  cell.dphi = b.dphi();
  cell.dz = b.dz();
  cell.measure = cell.r * cell.dr * cell.dphi * cell.dz;
  out.push_back(cell);
}

}  // namespace

std::vector<SourceCell> build_cells(const SourceConfig& cfg, const QuadratureSpec& q,
                                    const Vec3& x_P, int max_refine_override) {
  q.validate();
  const int max_refine = max_refine_override >= 0 ? max_refine_override : q.max_refine;

  // Azimuthal boost band around the filament phi_P + 3 pi / 2.
  double boost_lo = 0.0, boost_hi = 0.0;
  int boost = 1;
  if (q.filament_boost > 1.0 && q.filament_halfwidth > 0.0) {
    const double phi_P = std::atan2(x_P.y, x_P.x);
    const double phi_f = wrap_angle(phi_P + 1.5 * pi);
    boost_lo = phi_f - q.filament_halfwidth;
    boost_hi = phi_f + q.filament_halfwidth;
    boost = static_cast<int>(std::ceil(q.filament_boost));
  }
  auto in_boost_band = [&](double phi) {
    if (boost <= 1) return false;
    const double d = std::remainder(phi - 0.5 * (boost_lo + boost_hi), two_pi);
    return std::abs(d) <= 0.5 * (boost_hi - boost_lo);
  };

  std::vector<SourceCell> cells;
  cells.reserve(static_cast<std::size_t>(q.n_r) * q.n_phi * q.n_z);
  const double dr = (cfg.r_u - cfg.r_l) / q.n_r;
  const double dphi = two_pi / q.n_phi;
  const double dz = (cfg.z_max - cfg.z_min) / q.n_z;
  for (int ir = 0; ir < q.n_r; ++ir) {
    for (int ip = 0; ip < q.n_phi; ++ip) {
      for (int iz = 0; iz < q.n_z; ++iz) {
        Box b{cfg.r_l + ir * dr,      cfg.r_l + (ir + 1) * dr, ip * dphi,
              (ip + 1) * dphi,        cfg.z_min + iz * dz,     cfg.z_min + (iz + 1) * dz};
        const int nb = in_boost_band(0.5 * (b.phi0 + b.phi1)) ? boost : 1;
        for (int kb = 0; kb < nb; ++kb) {
          Box sub = b;
          sub.phi0 = b.phi0 + b.dphi() * kb / nb;
          sub.phi1 = b.phi0 + b.dphi() * (kb + 1) / nb;
          emit(cfg, q, x_P, sub, 0, max_refine, cells);
        }
      }
    }
  }
  return cells;
}

}  // namespace sfl
