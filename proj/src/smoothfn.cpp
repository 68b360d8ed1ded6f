#include "pbtk/smoothfn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pbtk/errors.hpp"

namespace pbtk {

Interval intersect(const Interval& a, const Interval& b) {
  return Interval{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

double RampSegment::value(double x) const {
  if (x <= start) return level_before;
  if (x >= end) return level_after;
  const double len = end - start;
  const double r = shoulder;
  double progress;  // integral of the trapezoid profile from `start` to x
  if (x < start + r) {
    progress = r * kernel_step_integral((x - start) / r);
  } else if (x <= end - r) {
    progress = 0.5 * r + (x - start - r);
  } else {
    progress = (len - r) - r * kernel_step_integral((end - x) / r);
  }
  const double t = std::clamp(progress / (len - r), 0.0, 1.0);
  return level_before + amplitude() * t;
}

double RampSegment::deriv(double x) const {
  if (x <= start || x >= end) return 0.0;
  const double r = shoulder;
  double w;  // trapezoid profile in [0, 1]
  if (x < start + r) {
    w = kernel_step((x - start) / r);
  } else if (x <= end - r) {
    w = 1.0;
  } else {
    w = kernel_step((end - x) / r);
  }
  return (amplitude() >= 0.0 ? slope : -slope) * std::min(w, 1.0);
}

namespace {

RampSegment make_segment(double lo_edge, double hi_edge, double level_before,
                         double level_after, std::optional<double> slope_opt,
                         double avail, bool anchor_at_end) {
  const double amp = std::abs(level_after - level_before);
  if (amp <= 0.0) throw InfeasibleSpec("ramp amplitude must be positive");
  if (avail <= 0.0) throw InfeasibleSpec("no room for ramp");
  double slope = slope_opt ? *slope_opt : 2.0 * amp / avail;
  if (slope <= 0.0) throw InfeasibleSpec("ramp slope must be positive");
  const double need = amp / slope;  // minimal (linear) ramp length
  if (need >= avail) {
    throw InfeasibleSpec("ramp too short for required derivative cap: slope*avail = " +
                         std::to_string(slope * avail) + " <= amplitude " +
                         std::to_string(amp));
  }
  const double r = std::min(0.5 * (avail - need), 0.5 * need);
  const double len = need + r;
  RampSegment seg;
  seg.shoulder = r;
  seg.slope = slope;
  seg.level_before = level_before;
  seg.level_after = level_after;
  if (anchor_at_end) {
    seg.end = hi_edge;
    seg.start = hi_edge - len;
  } else {
    seg.start = lo_edge;
    seg.end = lo_edge + len;
  }
  return seg;
}

}  // namespace

RampSegment ramp_ending_at(double end_at, double avail, double level_before,
                           double level_after, std::optional<double> slope) {
  return make_segment(end_at - avail, end_at, level_before, level_after, slope,
                      avail, /*anchor_at_end=*/true);
}

RampSegment ramp_starting_at(double start_at, double avail, double level_before,
                             double level_after, std::optional<double> slope) {
  return make_segment(start_at, start_at + avail, level_before, level_after, slope,
                      avail, /*anchor_at_end=*/false);
}

SmoothFn1D SmoothFn1D::assemble(std::vector<RampSegment> segments,
                                Interval design_support,
                                std::optional<Interval> plateau, bool range01) {
  SmoothFn1D f;
  std::sort(segments.begin(), segments.end(),
            [](const RampSegment& a, const RampSegment& b) { return a.start < b.start; });
  double level = 0.0;
  double cap = 0.0, cap2 = 0.0, sup = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    if (s.end <= s.start || s.shoulder <= 0.0 ||
        s.shoulder > 0.5 * (s.end - s.start) + 1e-15) {
      throw std::invalid_argument("malformed ramp segment");
    }
    if (s.level_before != level) {
      throw std::invalid_argument("segment levels do not chain");
    }
    if (i + 1 < segments.size() && s.end > segments[i + 1].start) {
      throw std::invalid_argument("segments overlap");
    }
    level = s.level_after;
    cap = std::max(cap, s.slope);
    cap2 = std::max(cap2, s.deriv2_bound());
    sup = std::max({sup, std::abs(s.level_before), std::abs(s.level_after)});
  }
  if (!segments.empty()) {
    if (level != 0.0) throw std::invalid_argument("function must return to 0");
    if (segments.front().start <= design_support.lo ||
        segments.back().end >= design_support.hi) {
      throw InfeasibleSpec("constructed support touches the design boundary");
    }
  }
  f.segments_ = std::move(segments);
  f.design_support_ = design_support;
  f.plateau_ = plateau;
  f.range01_ = range01;
  f.deriv_cap_ = cap;
  f.deriv2_cap_ = cap2;
  f.sup_abs_ = sup;
  return f;
}

double SmoothFn1D::value(double x) const {
  // Few segments per function; linear scan beats binary search here.
  double level = 0.0;
  for (const auto& s : segments_) {
    if (x <= s.start) return level;
    if (x < s.end) return s.value(x);
    level = s.level_after;
  }
  return level;
}

double SmoothFn1D::deriv(double x) const {
  for (const auto& s : segments_) {
    if (x <= s.start) return 0.0;
    if (x < s.end) return s.deriv(x);
  }
  return 0.0;
}

Interval SmoothFn1D::support() const {
  if (segments_.empty()) return Interval{0.0, 0.0};
  return Interval{segments_.front().start, segments_.back().end};
}

std::vector<Interval> SmoothFn1D::value_parts() const {
  std::vector<Interval> parts;
  for (const auto& s : segments_) {
    if (!parts.empty() && parts.back().hi == s.start) {
      parts.back().hi = s.end;
    } else if (!parts.empty() && s.level_before != 0.0) {
      parts.back().hi = s.end;  // nonzero constant gap joins the parts
    } else {
      parts.push_back(Interval{s.start, s.end});
    }
  }
  return parts;
}

std::vector<Interval> SmoothFn1D::deriv_parts() const {
  std::vector<Interval> parts;
  for (const auto& s : segments_) {
    if (!parts.empty() && parts.back().hi == s.start) {
      parts.back().hi = s.end;
    } else {
      parts.push_back(Interval{s.start, s.end});
    }
  }
  return parts;
}

SmoothFn1D SmoothFn1D::translated(double dx) const {
  SmoothFn1D f = *this;
  for (auto& s : f.segments_) {
    s.start += dx;
    s.end += dx;
  }
  f.design_support_.lo += dx;
  f.design_support_.hi += dx;
  if (f.plateau_) {
    f.plateau_->lo += dx;
    f.plateau_->hi += dx;
  }
  return f;
}

SmoothFn1D SmoothFn1D::dilated(double factor) const {
  if (factor <= 0.0) throw std::invalid_argument("dilation factor must be > 0");
  SmoothFn1D f = *this;
  for (auto& s : f.segments_) {
    s.start *= factor;
    s.end *= factor;
    s.shoulder *= factor;
    s.slope /= factor;
  }
  f.design_support_.lo *= factor;
  f.design_support_.hi *= factor;
  if (f.plateau_) {
    f.plateau_->lo *= factor;
    f.plateau_->hi *= factor;
  }
  f.deriv_cap_ /= factor;
  f.deriv2_cap_ /= factor * factor;
  return f;
}

Json SmoothFn1D::descriptor() const {
  Json j;
  j["kind"] = "ramp-chain";
  j["design_support"] = {design_support_.lo, design_support_.hi};
  if (plateau_) j["plateau"] = {plateau_->lo, plateau_->hi};
  j["range01"] = range01_;
  Json segs = Json::array();
  for (const auto& s : segments_) {
    segs.push_back({{"start", s.start},
                    {"end", s.end},
                    {"shoulder", s.shoulder},
                    {"slope", s.slope},
                    {"level_before", s.level_before},
                    {"level_after", s.level_after}});
  }
  j["segments"] = std::move(segs);
  return j;
}

SmoothFn1D SmoothFn1D::from_descriptor(const Json& j) {
  std::vector<RampSegment> segs;
  for (const auto& e : j.at("segments")) {
    RampSegment s;
    s.start = e.at("start").get<double>();
    s.end = e.at("end").get<double>();
    s.shoulder = e.at("shoulder").get<double>();
    s.slope = e.at("slope").get<double>();
    s.level_before = e.at("level_before").get<double>();
    s.level_after = e.at("level_after").get<double>();
    segs.push_back(s);
  }
  Interval ds{j.at("design_support")[0].get<double>(),
              j.at("design_support")[1].get<double>()};
  std::optional<Interval> plateau;
  if (j.contains("plateau")) {
    plateau = Interval{j["plateau"][0].get<double>(), j["plateau"][1].get<double>()};
  }
  return assemble(std::move(segs), ds, plateau, j.value("range01", true));
}

SmoothFn1D make_ramp(const BumpSpec& spec) {
  const Interval sup = spec.support;
  const Interval pl = spec.plateau;
  if (pl.hi < pl.lo) throw InfeasibleSpec("plateau interval is reversed");
  if (!(pl.lo > sup.lo && pl.hi < sup.hi)) {
    throw InfeasibleSpec("plateau must lie strictly inside the support");
  }
  const double avail_up = pl.lo - sup.lo;
  const double avail_down = sup.hi - pl.hi;
  // Explicit early check so the error names the spec quantity directly.
  if (spec.target_deriv_sup) {
    const double cap = *spec.target_deriv_sup;
    if (cap * avail_up <= 1.0) {
      throw InfeasibleSpec("targetDerivSup * rampLength = " +
                           std::to_string(cap * avail_up) + " <= 1");
    }
  }
  std::vector<RampSegment> segs;
  segs.push_back(ramp_ending_at(pl.lo, avail_up, 0.0, 1.0, spec.target_deriv_sup));
  // Descent is gentle when room allows, otherwise capped at the same target
  // so the requested sup-norm of the derivative stays exact.
  std::optional<double> down_slope;
  if (spec.target_deriv_sup && 2.0 / avail_down > *spec.target_deriv_sup) {
    down_slope = *spec.target_deriv_sup;
  }
  segs.push_back(ramp_starting_at(pl.hi, avail_down, 1.0, 0.0, down_slope));
  return SmoothFn1D::assemble(std::move(segs), sup, pl, true);
}

SmoothFn1D make_plateau_cutoff(Interval support, Interval plateau_region) {
  if (plateau_region.hi < plateau_region.lo) {
    throw InfeasibleSpec("plateau interval is reversed");
  }
  if (!(plateau_region.lo > support.lo && plateau_region.hi < support.hi)) {
    throw InfeasibleSpec("plateau region touches the support boundary");
  }
  std::vector<RampSegment> segs;
  segs.push_back(ramp_ending_at(plateau_region.lo, plateau_region.lo - support.lo,
                                0.0, 1.0));
  segs.push_back(ramp_starting_at(plateau_region.hi, support.hi - plateau_region.hi,
                                  1.0, 0.0));
  return SmoothFn1D::assemble(std::move(segs), support, plateau_region, true);
}

double ShrinkMap::value(double x) const {
  if (alpha_ == 0.0) return x;
  const double u = std::abs(x) - alpha_;
  if (u <= 0.0) return 0.0;
  const double w = delta_ * alpha_;  // mollification width
  double m;
  if (u >= w) {
    m = u - 0.5 * w;
  } else {
    m = w * kernel_step_integral(u / w);
  }
  return x >= 0.0 ? m : -m;
}

double ShrinkMap::deriv(double x) const {
  if (alpha_ == 0.0) return 1.0;
  const double u = std::abs(x) - alpha_;
  if (u <= 0.0) return 0.0;
  const double w = delta_ * alpha_;
  if (u >= w) return 1.0;
  return kernel_step(u / w);
}

ShrinkMap make_shrink(double alpha, double delta) {
  if (alpha < 0.0) throw OutOfRange("shrink alpha must be >= 0");
  if (delta <= 0.0) throw OutOfRange("shrink delta must be > 0");
  return ShrinkMap(alpha, delta);
}

ComposedPoint compose1d(const ShrinkMap& outer, double inner_value,
                        double inner_grad_norm) {
  return ComposedPoint{outer.value(inner_value),
                       std::abs(outer.deriv(inner_value)) * inner_grad_norm};
}

}  // namespace pbtk
