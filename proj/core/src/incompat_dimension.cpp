#include <algorithm>
#include <cmath>
#include <thread>

#include "gptlab/qubit.hpp"

namespace gptlab {

namespace {

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Fills out[k] = fn(k) for k < n; each index is written by exactly one worker.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, int jobs, Fn fn) {
  std::vector<T> out(n);
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
  if (workers <= 1) {
    for (std::size_t k = 0; k < n; ++k) out[k] = fn(k);
    return out;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t k = w; k < n; k += workers) out[k] = fn(k);
    });
  for (auto& th : pool) th.join();
  return out;
}

void tally(ScanResult& s, const CellResult& c, bool& have_closest) {
  ++s.cells;
  switch (c.verdict.path) {
    case SegmentPath::AntiAligned: ++s.anti_aligned; break;
    case SegmentPath::ZSign: ++s.z_sign; break;
    case SegmentPath::BuschSearch: ++s.busch; break;
    case SegmentPath::Incompatible: s.incompatible.push_back(c); break;
  }
  if (c.verdict.path != SegmentPath::AntiAligned &&
      (!have_closest || c.verdict.min_margin > s.closest.verdict.min_margin)) {
    s.closest = c;
    have_closest = true;
  }
}

constexpr double kHalfPi = 0.5 * kPi;

}  // namespace

ScanResult scan_segments(double t, const DimensionOptions& opt) {
  if (opt.grid < 1 || opt.refine < 1 || opt.refine_cells < 0)
    throw QubitError("scan_segments: invalid grid options");
  const int n = opt.grid;
  const int jobs = resolve_jobs(opt.jobs);
  const double h = kHalfPi / n;

  auto base = parallel_map<CellResult>(static_cast<std::size_t>(n) * n, jobs, [&](std::size_t k) {
    const double phi0 = (static_cast<double>(k / n) + 0.5) * h;
    const double psi0 = (static_cast<double>(k % n) + 0.5) * h;
    return CellResult{phi0, psi0, analyze_segment(t, phi0, psi0, true)};
  });

  ScanResult s;
  s.t = t;
  s.grid = n;
  bool have_closest = false;
  for (const auto& c : base) tally(s, c, have_closest);

  // Subdivide the cells nearest to incompatibility (largest margin first,
  // ties by scan index).
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < base.size(); ++k)
    if (base[k].verdict.path != SegmentPath::AntiAligned) order.push_back(k);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return base[a].verdict.min_margin > base[b].verdict.min_margin;
  });
  order.resize(std::min<std::size_t>(order.size(), static_cast<std::size_t>(opt.refine_cells)));
  const int r = opt.refine;
  if (r > 1 && !order.empty()) {
    const std::size_t per = static_cast<std::size_t>(r) * r;
    auto fine = parallel_map<CellResult>(order.size() * per, jobs, [&](std::size_t k) {
      const CellResult& parent = base[order[k / per]];
      const std::size_t sub = k % per;
      const double hs = h / r;
      const double phi0 = parent.phi0 - 0.5 * h + (static_cast<double>(sub / r) + 0.5) * hs;
      const double psi0 = parent.psi0 - 0.5 * h + (static_cast<double>(sub % r) + 0.5) * hs;
      return CellResult{phi0, psi0, analyze_segment(t, phi0, psi0, true)};
    });
    for (const auto& c : fine) tally(s, c, have_closest);
  }
  s.any_incompatible = !s.incompatible.empty();
  return s;
}

ChiCompReport verify_chi_comp(double t, const CompatOptions& opt) {
  if (!(t >= 0.0 && t <= 1.0)) throw QubitError("verify_chi_comp: t outside [0, 1]");
  ChiCompReport rep;

  // Bloch-ball plane r_x = 0, spanned by three affinely independent states.
  const std::vector<Vec> plane{{0.0, 1.0, 0.0, 1.0}, {0.0, -1.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 1.0}};
  const StateSubset s0 = make_state_subset(plane);
  rep.lower_witness_size = s0.affine_dim + 1;

  // G(x, y) = Tr[rho0 A(x)] B(y) with rho0 the maximally mixed state.
  bool ok = true;
  for (const auto& g : plane) {
    for (int x = 0; x < 2; ++x) {
      const double sx = x == 0 ? 1.0 : -1.0;
      const double pa = 0.5 * (1.0 + sx * t * g[0]);
      const double pa0 = 0.5;  // Tr[rho0 A(x)]
      double row = 0.0;
      for (int y = 0; y < 2; ++y) {
        const double sy = y == 0 ? 1.0 : -1.0;
        const double pb = 0.5 * (1.0 + sy * t * g[1]);
        const double cell = pa0 * pb;
        // Cell effect pa0 B(y) has eigenvalues pa0 (1 +- t) / 2.
        ok = ok && pa0 * 0.5 * (1.0 - t) >= 0.0 && pa0 * 0.5 * (1.0 + t) <= 1.0;
        row += cell;
      }
      ok = ok && std::abs(row - pa) <= 1e-12;
    }
    for (int y = 0; y < 2; ++y) {
      const double sy = y == 0 ? 1.0 : -1.0;
      const double pb = 0.5 * (1.0 + sy * t * g[1]);
      ok = ok && std::abs(0.5 * pb + 0.5 * pb - pb) <= 1e-12;
    }
  }
  rep.product_joint_valid = ok;

  // The same plane meets the disc in the segment x = 0.
  const TheoryPtr disc = make_disc();
  const auto [a, b] = mu_pair(disc, t);
  rep.disc_section_lp_compatible =
      s0_compatible(a, b, make_state_subset({{0.0, 1.0, 1.0}, {0.0, -1.0, 1.0}}), opt).compatible;

  rep.full_space_incompatible = !qubit_pair_compatible_closed_form({t, 0.0, 0.0}, {0.0, t, 0.0});
  if (rep.full_space_incompatible && rep.product_joint_valid && rep.disc_section_lp_compatible)
    rep.chi_comp = rep.lower_witness_size;
  return rep;
}

DimensionReport incompatibility_dimension_qubit(double t, const TheoryPtr& disc,
                                                const DimensionOptions& opt) {
  if (!(t > 1.0 / std::sqrt(2.0) && t <= 1.0))
    throw QubitError("incompatibility_dimension_qubit: t must lie in (1/sqrt(2), 1]");
  if (!disc || disc->kind() != TheoryKind::Disc)
    throw QubitError("incompatibility_dimension_qubit: disc theory required");
  DimensionReport rep;
  rep.t = t;
  rep.comp = verify_chi_comp(t, opt.lp);
  rep.chi_comp = rep.comp.chi_comp;

  if (t == 1.0) {
    // Eigenstates of the projections onto the - outcomes of A^x and A^y.
    const auto [a, b] = mu_pair(disc, 1.0);
    StateSubset s0 = make_state_subset({{-1.0, 0.0, 1.0}, {0.0, -1.0, 1.0}});
    const auto r = s0_compatible(a, b, s0, opt.lp);
    if (!r.compatible && r.certified) {
      rep.chi_incomp = s0.affine_dim + 1;
      rep.witness = std::move(s0);
    } else {
      rep.chi_incomp = 3;
    }
    return rep;
  }

  rep.scan = scan_segments(t, opt);
  const int n = opt.grid;
  const double h = kHalfPi / n;

  // Spot checks: incompatible cells first, then the closest cell, then an even
  // stride through the base grid.
  std::vector<std::pair<double, double>> picks;
  for (std::size_t i = 0; i < rep.scan.incompatible.size() && i < 8; ++i)
    picks.emplace_back(rep.scan.incompatible[i].phi0, rep.scan.incompatible[i].psi0);
  if (rep.scan.cells > 0) picks.emplace_back(rep.scan.closest.phi0, rep.scan.closest.psi0);
  const std::size_t total = static_cast<std::size_t>(n) * n;
  const std::size_t want = static_cast<std::size_t>(std::max(0, opt.lp_spot_checks));
  for (std::size_t s = 0; picks.size() < want && s < want; ++s) {
    const std::size_t k = (2 * s + 1) * total / (2 * want);
    picks.emplace_back((static_cast<double>(k / n) + 0.5) * h, (static_cast<double>(k % n) + 0.5) * h);
  }
  picks.resize(std::min(picks.size(), want));
  rep.spot_checks = parallel_map<SpotCheck>(picks.size(), resolve_jobs(opt.jobs), [&](std::size_t i) {
    const auto [phi0, psi0] = picks[i];
    const auto lp = segment_lp(disc, t, phi0, psi0, opt.lp);
    return SpotCheck{phi0, psi0, analyze_segment(t, phi0, psi0).compatible, lp.compatible,
                     lp.certified};
  });
  for (const auto& c : rep.spot_checks)
    if (c.lp_certified && c.lp_compatible != c.busch_compatible) ++rep.disagreements;

  // The LP decides: the witness is the first searched-incompatible chord whose
  // endpoint LP is certified infeasible.
  for (const auto& c : rep.scan.incompatible) {
    const auto lp = segment_lp(disc, t, c.phi0, c.psi0, opt.lp);
    if (!lp.compatible && lp.certified) {
      const Segment seg{c.phi0, c.psi0};
      const Vec2 r1 = seg.r1(), r2 = seg.r2();
      rep.witness = make_state_subset({{r1[0], r1[1], 1.0}, {r2[0], r2[1], 1.0}});
      rep.witness_cell = c;
      break;
    }
    ++rep.disagreements;
  }
  rep.chi_incomp = rep.witness_cell ? rep.witness.affine_dim + 1 : 3;
  return rep;
}

ThresholdReport estimate_t0(const DimensionOptions& opt) {
  const double lo = 1.0 / std::sqrt(2.0) + 0.005;
  const double hi = 0.999;
  auto run = [&](const DimensionOptions& o) {
    return bisect_predicate([&](double t) { return !scan_segments(t, o).any_incompatible; }, lo, hi,
                            o.t0_tol);
  };
  ThresholdReport rep;
  rep.grid = opt.grid;
  rep.trace = run(opt);
  rep.t0 = rep.trace.estimate;
  DimensionOptions twice = opt;
  twice.grid = 2 * opt.grid;
  rep.trace_doubled = run(twice);
  rep.t0_doubled = rep.trace_doubled.estimate;
  rep.stability = std::abs(rep.t0 - rep.t0_doubled);
  return rep;
}

}  // namespace gptlab
