#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <thread>

#include "pbtk/errors.hpp"
#include "pbtk/symplectic.hpp"

namespace pbtk {
namespace {

std::size_t thread_count() {
  if (const char* env = std::getenv("PBTK_THREADS")) {
    const long v = std::atol(env);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

// Run fn(lo, hi) over disjoint chunks of [0, total). Results must go to
// disjoint storage; reductions happen serially afterwards so the outcome is
// independent of the thread count.
void parallel_chunks(std::size_t total,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
  const std::size_t workers =
      std::min(thread_count(), std::max<std::size_t>(total, 1));
  if (workers <= 1 || total < 4096) {
    fn(0, total);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (total + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] { fn(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

struct AxisGrid {
  std::vector<double> pts;
  double step = 0.0;
};

AxisGrid linspace(Interval iv, std::size_t n) {
  AxisGrid g;
  if (n < 2) n = 2;
  g.pts.resize(n);
  g.step = iv.length() / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    g.pts[i] = iv.lo + g.step * static_cast<double>(i);
  }
  g.pts.back() = iv.hi;
  return g;
}

std::vector<double> table(const AxisFn& f, const AxisGrid& g) {
  std::vector<double> out(g.pts.size());
  parallel_chunks(g.pts.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) out[i] = f.eval(g.pts[i]);
  });
  return out;
}

struct Sup1D {
  double grid_max = 0.0;
  double certified = 0.0;
  double arg = 0.0;
};

Sup1D sup1d(const AxisFn& f, Interval iv, std::size_t n) {
  Sup1D s;
  if (f.is_one()) {
    s.grid_max = s.certified = 1.0;
    s.arg = iv.mid();
    return s;
  }
  const AxisGrid g = linspace(iv, n);
  s.arg = g.pts.front();
  for (std::size_t i = 0; i < g.pts.size(); ++i) {
    const double v = std::abs(f.eval(g.pts[i]));
    if (v > s.grid_max) {
      s.grid_max = v;
      s.arg = g.pts[i];
    }
  }
  s.certified = s.grid_max + f.deriv_bound() * g.step * 0.5;
  return s;
}

// Resolution of the 1D certification sweeps (cheap, so generous).
constexpr std::size_t kCert1DPoints = 1 << 17;

// Per-term certified sup as a product of per-axis certified 1D sups. Tight
// because the axes of a tensor term are independent.
double term_cert(const TensorTerm& t, const ModelSpace& space) {
  const Sup1D sx = sup1d(t.x, space.plane_x, kCert1DPoints);
  const Sup1D sy = sup1d(t.y, space.plane_y, kCert1DPoints);
  double c = std::abs(t.coeff) * sx.certified * sy.certified;
  const Interval ring_iv{0.0, space.ring_radius()};
  for (const auto& r : t.rings) {
    if (r.is_one()) continue;
    c *= sup1d(r, ring_iv, kCert1DPoints).certified;
  }
  return c;
}

// Interval on which an order-0 AxisFn product is exactly 1 (intersection of
// factor plateaus); nullopt when any factor lacks one.
std::optional<Interval> product_plateau(const AxisFn& f) {
  std::optional<Interval> acc;
  for (const auto& a : f.atoms()) {
    if (a.deriv_order != 0 || !a.fn->plateau()) return std::nullopt;
    acc = acc ? intersect(*acc, *a.fn->plateau()) : *a.fn->plateau();
    if (acc->empty()) return std::nullopt;
  }
  return acc;
}

struct RingGroup {
  std::vector<std::size_t> term_idx;
  std::vector<AxisFn> rings;
};

std::vector<RingGroup> group_by_rings(const std::vector<TensorTerm>& terms) {
  std::vector<RingGroup> groups;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& rings = terms[k].rings;
    bool placed = false;
    for (auto& g : groups) {
      bool same = true;
      for (std::size_t i = 0; i < rings.size(); ++i) {
        if (!g.rings[i].same_structure(rings[i])) {
          same = false;
          break;
        }
      }
      if (same) {
        g.term_idx.push_back(k);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back(RingGroup{{k}, rings});
  }
  return groups;
}

// Ring-value combinations for one annulus slot: each entry lists every
// group's ring-factor value at a realizable radius. When the distinct
// profiles form a nested chain (support inside the next plateau) the sup of
// a multilinear expression over the slot is exactly the max over these
// corner entries; otherwise a dense radius grid is used.
struct SlotCombos {
  std::vector<std::vector<double>> values;
  std::vector<double> radii;
};

SlotCombos slot_combos(const std::vector<const AxisFn*>& ring_of_group,
                       double ring_radius, std::size_t dense_n) {
  SlotCombos out;
  std::vector<const AxisFn*> patterns;
  for (const AxisFn* f : ring_of_group) {
    if (f->is_one()) continue;
    bool seen = false;
    for (const AxisFn* p : patterns) {
      if (p->same_structure(*f)) {
        seen = true;
        break;
      }
    }
    if (!seen) patterns.push_back(f);
  }
  auto combo_values = [&](double radius) {
    std::vector<double> v(ring_of_group.size());
    for (std::size_t g = 0; g < ring_of_group.size(); ++g) {
      v[g] = ring_of_group[g]->is_one() ? 1.0 : ring_of_group[g]->eval(radius);
    }
    return v;
  };
  bool exact = true;
  std::vector<double> radii;
  if (patterns.empty()) {
    radii = {0.0};
  } else if (patterns.size() <= 2) {
    for (const AxisFn* p : patterns) {
      if (!p->nonneg01() || !product_plateau(*p)) exact = false;
    }
    if (exact && patterns.size() == 2) {
      const AxisFn* inner = patterns[0];
      const AxisFn* outer = patterns[1];
      auto nested = [](const AxisFn& in, const AxisFn& out_fn) {
        auto pl = product_plateau(out_fn);
        const Interval s = in.support();
        return pl && s.lo > pl->lo && s.hi < pl->hi;
      };
      if (nested(*outer, *inner)) std::swap(inner, outer);
      if (nested(*inner, *outer)) {
        const Interval pl = *product_plateau(*outer);
        const Interval s = inner->support();
        double gap;
        if (pl.lo < s.lo) {
          gap = 0.5 * (pl.lo + s.lo);
        } else if (pl.hi > s.hi) {
          gap = 0.5 * (s.hi + pl.hi);
        } else {
          exact = false;
          gap = 0.0;
        }
        if (exact) {
          radii = {0.0, gap, product_plateau(*inner)->mid()};
        }
      } else {
        exact = false;
      }
    } else if (exact) {  // single pattern
      radii = {0.0, product_plateau(*patterns[0])->mid()};
    }
  } else {
    exact = false;
  }
  if (!exact) {
    const AxisGrid gr = linspace(Interval{0.0, ring_radius}, dense_n);
    radii = gr.pts;
  }
  for (double rho : radii) {
    out.values.push_back(combo_values(rho));
    out.radii.push_back(rho);
  }
  return out;
}

struct PlaneField {
  std::vector<double> data;  // nx * ny, row-major in x
  std::size_t nx = 0, ny = 0;
};

void accumulate_plane(PlaneField& field, const TensorTerm& t, double weight,
                      const AxisGrid& gx, const AxisGrid& gy) {
  if (weight == 0.0) return;
  const std::vector<double> tx = table(t.x, gx);
  const std::vector<double> ty = table(t.y, gy);
  parallel_chunks(field.nx, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const double cx = t.coeff * weight * tx[i];
      if (cx == 0.0) continue;
      double* row = field.data.data() + i * field.ny;
      for (std::size_t j = 0; j < field.ny; ++j) row[j] += cx * ty[j];
    }
  });
}

struct PlaneMax {
  double grid_max = 0.0;
  std::size_t arg_i = 0, arg_j = 0;
};

PlaneMax plane_max(const PlaneField& field, double offset) {
  std::vector<PlaneMax> partial(field.nx);
  parallel_chunks(field.nx, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      PlaneMax pm;
      pm.arg_i = i;
      const double* row = field.data.data() + i * field.ny;
      for (std::size_t j = 0; j < field.ny; ++j) {
        const double v = std::abs(row[j] + offset);
        if (v > pm.grid_max) {
          pm.grid_max = v;
          pm.arg_j = j;
        }
      }
      partial[i] = pm;
    }
  });
  PlaneMax best;
  best.grid_max = -1.0;
  for (const auto& pm : partial) {
    if (pm.grid_max > best.grid_max) best = pm;
  }
  return best;
}

// Lipschitz bound of a term in the plane variables, ring factors bounded by
// their sups.
double plane_lipschitz(const TensorTerm& t) {
  double ring_sup = 1.0;
  for (const auto& r : t.rings) ring_sup *= r.sup_bound();
  const double dx = t.x.deriv_bound() * t.y.sup_bound();
  const double dy = t.x.sup_bound() * t.y.deriv_bound();
  return std::abs(t.coeff) * ring_sup * std::hypot(dx, dy);
}

SupNormReport empty_report(const ModelSpace& space, const GridSpec& grid) {
  SupNormReport rep;
  rep.argmax.assign(space.dims(), 0.0);
  rep.resolution.assign(space.dims(), 0.0);
  rep.resolution[0] =
      space.plane_x.length() / static_cast<double>(grid.plane_nx - 1);
  rep.resolution[1] =
      space.plane_y.length() / static_cast<double>(grid.plane_ny - 1);
  for (int r = 0; r < space.rings(); ++r) {
    const double hr = space.ring_radius() / static_cast<double>(grid.ring_n - 1);
    rep.resolution[2 + 2 * r] = hr;
    rep.resolution[3 + 2 * r] = hr;
  }
  return rep;
}

Interval hull_of(const std::vector<Interval>& ivs) {
  Interval h = ivs.front();
  for (const auto& iv : ivs) {
    h.lo = std::min(h.lo, iv.lo);
    h.hi = std::max(h.hi, iv.hi);
  }
  return h;
}

// Sum over ring-signature groups evaluated on a plane grid for every ring
// combination; reports the max and a plane-Lipschitz certificate.
struct ComboSupResult {
  double grid_max = 0.0;
  double certified = 0.0;
  double arg_x = 0.0, arg_y = 0.0;
  std::vector<double> arg_radii;
};

ComboSupResult combo_sup(const std::vector<TensorTerm>& terms,
                         const std::vector<RingGroup>& groups,
                         const ModelSpace& space, Interval ix, Interval iy,
                         const GridSpec& grid, double offset) {
  const AxisGrid gx = linspace(ix, grid.plane_nx);
  const AxisGrid gy = linspace(iy, grid.plane_ny);
  const int slots = space.rings();
  const std::size_t dense_n =
      std::min<std::size_t>(grid.ring_n, slots >= 2 ? 48 : 160);
  std::vector<SlotCombos> combos(static_cast<std::size_t>(std::max(slots, 0)));
  for (int s = 0; s < slots; ++s) {
    std::vector<const AxisFn*> ring_of_group;
    for (const auto& g : groups) ring_of_group.push_back(&g.rings[s]);
    combos[s] = slot_combos(ring_of_group, space.ring_radius(), dense_n);
  }
  std::vector<std::vector<std::size_t>> combo_index{{}};
  for (int s = 0; s < slots; ++s) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& prefix : combo_index) {
      for (std::size_t c = 0; c < combos[s].values.size(); ++c) {
        auto e = prefix;
        e.push_back(c);
        next.push_back(std::move(e));
      }
    }
    combo_index = std::move(next);
  }

  ComboSupResult res;
  res.arg_radii.assign(static_cast<std::size_t>(std::max(slots, 0)), 0.0);
  double best = -1.0;
  PlaneField field;
  field.nx = gx.pts.size();
  field.ny = gy.pts.size();
  for (const auto& ci : combo_index) {
    field.data.assign(field.nx * field.ny, 0.0);
    for (std::size_t g = 0; g < groups.size(); ++g) {
      double w = 1.0;
      for (int s = 0; s < slots; ++s) w *= combos[s].values[ci[s]][g];
      if (w == 0.0) continue;
      for (std::size_t k : groups[g].term_idx) {
        accumulate_plane(field, terms[k], w, gx, gy);
      }
    }
    const PlaneMax pm = plane_max(field, offset);
    if (pm.grid_max > best) {
      best = pm.grid_max;
      res.arg_x = gx.pts[pm.arg_i];
      res.arg_y = gy.pts[pm.arg_j];
      for (int s = 0; s < slots; ++s) res.arg_radii[s] = combos[s].radii[ci[s]];
    }
  }
  res.grid_max = std::max(best, 0.0);
  double plane_L = 0.0;
  for (const auto& t : terms) plane_L += plane_lipschitz(t);
  res.certified = res.grid_max + plane_L * 0.5 * std::hypot(gx.step, gy.step);
  return res;
}

// Sums of the form  (enclosing cutoffs) + (inner terms)  where every cutoff
// is exactly its coefficient on a region containing all inner supports.
// Outside the inner hull the inner terms vanish, so the sup splits into two
// independent, individually tight problems.
std::optional<SupNormReport> try_cutoff_split(const TensorFn& F,
                                              const ModelSpace& space,
                                              const GridSpec& grid,
                                              double cert_by_terms) {
  const auto& terms = F.terms();
  std::vector<std::size_t> cut_idx, inner_idx;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    bool plateaus = product_plateau(terms[k].x) && product_plateau(terms[k].y);
    for (const auto& r : terms[k].rings) {
      if (!r.is_one() && !product_plateau(r)) plateaus = false;
    }
    (plateaus ? cut_idx : inner_idx).push_back(k);
  }
  if (cut_idx.empty() || inner_idx.empty()) return std::nullopt;

  std::vector<Interval> hx, hy;
  std::vector<std::vector<Interval>> hr(space.rings());
  for (std::size_t k : inner_idx) {
    hx.push_back(terms[k].x.support());
    hy.push_back(terms[k].y.support());
    for (int s = 0; s < space.rings(); ++s) {
      if (terms[k].rings[s].is_one()) return std::nullopt;
      hr[s].push_back(terms[k].rings[s].support());
    }
  }
  const Interval inner_x = hull_of(hx);
  const Interval inner_y = hull_of(hy);
  for (std::size_t k : cut_idx) {
    const auto px = product_plateau(terms[k].x);
    const auto py = product_plateau(terms[k].y);
    if (!(inner_x.lo > px->lo && inner_x.hi < px->hi)) return std::nullopt;
    if (!(inner_y.lo > py->lo && inner_y.hi < py->hi)) return std::nullopt;
    for (int s = 0; s < space.rings(); ++s) {
      if (terms[k].rings[s].is_one()) continue;
      const auto pr = product_plateau(terms[k].rings[s]);
      const Interval rs = hull_of(hr[s]);
      if (!(rs.lo > pr->lo && rs.hi < pr->hi)) return std::nullopt;
    }
  }

  double const_sum = 0.0;
  TensorFn cutoff_only(F.half_dim());
  for (std::size_t k : cut_idx) {
    const_sum += terms[k].coeff;
    cutoff_only.add_term(terms[k]);
  }
  std::vector<TensorTerm> inner;
  for (std::size_t k : inner_idx) inner.push_back(terms[k]);
  const std::vector<RingGroup> groups = group_by_rings(inner);

  // Region with all inner supports: cutoffs contribute const_sum exactly.
  const ComboSupResult in =
      combo_sup(inner, groups, space, inner_x, inner_y, grid, const_sum);
  // Elsewhere only the cutoffs survive.
  const SupNormReport out_rep = sup_norm(cutoff_only, space, grid);

  SupNormReport rep = empty_report(space, grid);
  rep.resolution[0] = inner_x.length() / static_cast<double>(grid.plane_nx - 1);
  rep.resolution[1] = inner_y.length() / static_cast<double>(grid.plane_ny - 1);
  if (in.grid_max >= out_rep.grid_max) {
    rep.grid_max = in.grid_max;
    rep.argmax[0] = in.arg_x;
    rep.argmax[1] = in.arg_y;
    for (int s = 0; s < space.rings(); ++s) rep.argmax[2 + 2 * s] = in.arg_radii[s];
  } else {
    rep.grid_max = out_rep.grid_max;
    rep.argmax = out_rep.argmax;
  }
  const double cert = std::max(in.certified, out_rep.certified_upper_bound);
  rep.certified_upper_bound =
      std::max(rep.grid_max, std::min(cert, cert_by_terms));
  return rep;
}

}  // namespace

Json SupNormReport::to_json() const {
  return Json{{"gridMax", grid_max},
              {"certifiedUpperBound", certified_upper_bound},
              {"argmax", argmax},
              {"resolution", resolution}};
}

SupNormReport sup_norm(const TensorFn& F, const ModelSpace& space,
                       const GridSpec& grid) {
  SupNormReport rep = empty_report(space, grid);
  if (F.empty()) return rep;

  double cert_by_terms = 0.0;
  for (const auto& t : F.terms()) cert_by_terms += term_cert(t, space);

  if (F.terms().size() == 1) {
    const TensorTerm& t = F.terms().front();
    const Sup1D sx = sup1d(t.x, space.plane_x, grid.plane_nx);
    const Sup1D sy = sup1d(t.y, space.plane_y, grid.plane_ny);
    double gm = std::abs(t.coeff) * sx.grid_max * sy.grid_max;
    rep.argmax[0] = sx.arg;
    rep.argmax[1] = sy.arg;
    for (std::size_t r = 0; r < t.rings.size(); ++r) {
      if (t.rings[r].is_one()) continue;
      const Sup1D sr =
          sup1d(t.rings[r], Interval{0.0, space.ring_radius()}, grid.ring_n);
      gm *= sr.grid_max;
      rep.argmax[2 + 2 * r] = sr.arg;
    }
    rep.grid_max = gm;
    rep.certified_upper_bound = std::max(gm, cert_by_terms);
    return rep;
  }

  if (auto split = try_cutoff_split(F, space, grid, cert_by_terms)) {
    return *split;
  }

  const std::vector<RingGroup> groups = group_by_rings(F.terms());
  const ComboSupResult res = combo_sup(F.terms(), groups, space, space.plane_x,
                                       space.plane_y, grid, 0.0);
  rep.grid_max = res.grid_max;
  rep.argmax[0] = res.arg_x;
  rep.argmax[1] = res.arg_y;
  for (int s = 0; s < space.rings(); ++s) rep.argmax[2 + 2 * s] = res.arg_radii[s];
  rep.certified_upper_bound =
      std::max(rep.grid_max, std::min(res.certified, cert_by_terms));
  return rep;
}

SupNormReport sup_norm_callable(
    const std::function<double(std::span<const double>)>& f,
    const std::vector<Interval>& box, double lipschitz_bound,
    const std::vector<std::size_t>& resolution) {
  if (box.size() != resolution.size()) {
    throw std::invalid_argument("box/resolution size mismatch");
  }
  const std::size_t dims = box.size();
  std::vector<AxisGrid> grids(dims);
  double cell2 = 0.0;
  std::size_t total = 1;
  for (std::size_t a = 0; a < dims; ++a) {
    grids[a] = linspace(box[a], resolution[a]);
    cell2 += grids[a].step * grids[a].step;
    total *= grids[a].pts.size();
  }
  SupNormReport rep;
  rep.resolution.resize(dims);
  for (std::size_t a = 0; a < dims; ++a) rep.resolution[a] = grids[a].step;
  rep.argmax.assign(dims, 0.0);

  std::vector<std::size_t> idx(dims, 0);
  std::vector<double> pt(dims);
  double gm = -1.0;
  std::vector<std::size_t> arg(dims, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (std::size_t a = 0; a < dims; ++a) pt[a] = grids[a].pts[idx[a]];
    const double v = std::abs(f(pt));
    if (v > gm) {
      gm = v;
      arg = idx;
    }
    for (std::size_t a = dims; a-- > 0;) {
      if (++idx[a] < grids[a].pts.size()) break;
      idx[a] = 0;
    }
  }
  rep.grid_max = std::max(gm, 0.0);
  for (std::size_t a = 0; a < dims; ++a) rep.argmax[a] = grids[a].pts[arg[a]];
  rep.certified_upper_bound =
      rep.grid_max + lipschitz_bound * 0.5 * std::sqrt(cell2);
  if (rep.grid_max > 0.0 && rep.certified_upper_bound / rep.grid_max > 1.5) {
    throw ResolutionTooCoarse(
        "certified bound exceeds grid estimate by more than 50%");
  }
  return rep;
}

double grid_max_callable(const std::function<double(std::span<const double>)>& f,
                         const std::vector<Interval>& box,
                         const std::vector<std::size_t>& resolution) {
  std::vector<AxisGrid> grids(box.size());
  std::size_t total = 1;
  for (std::size_t a = 0; a < box.size(); ++a) {
    grids[a] = linspace(box[a], resolution[a]);
    total *= grids[a].pts.size();
  }
  std::vector<std::size_t> idx(box.size(), 0);
  std::vector<double> pt(box.size());
  double gm = 0.0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (std::size_t a = 0; a < box.size(); ++a) pt[a] = grids[a].pts[idx[a]];
    gm = std::max(gm, std::abs(f(pt)));
    for (std::size_t a = box.size(); a-- > 0;) {
      if (++idx[a] < grids[a].pts.size()) break;
      idx[a] = 0;
    }
  }
  return gm;
}

}  // namespace pbtk
