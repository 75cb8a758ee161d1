#include "dimerg2/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>

namespace dimerg2::zeros {

const char* to_string(ZeroClass c) {
  switch (c) {
    case ZeroClass::Interference:     return "interference";
    case ZeroClass::TrivialQuenching: return "trivial-quenching";
    case ZeroClass::EpsIndependent:   return "eps-independent";
  }
  return "?";
}

int ZeroLocus::expanded_count(ZeroClass c) const {
  int count = 0;
  for (const auto& f : features)
    if (f.classification == c) count += f.has_unstored_partner ? 2 : 1;
  return count;
}

std::vector<ZeroFeature> ZeroLocus::expanded(ZeroClass c) const {
  std::vector<ZeroFeature> out;
  for (const auto& f : features) {
    if (f.classification != c) continue;
    out.push_back(f);
    if (f.has_unstored_partner) {
      ZeroFeature twin = f;
      twin.has_unstored_partner = false;
      for (auto& v : twin.vertices) std::swap(v.x(), v.y());
      out.push_back(twin);
    }
  }
  return out;
}

namespace {

// Exactly real reductions of Psi. Free space: Psi = 2 e^{-i k0 s} F with
// F = cos(pi z12 (cos - cos')); perfect mirror: Psi = 4 F with
// F = cos(k z1 c) cos(k z2 c') + cos(k z1 c') cos(k z2 c).
struct RealReduction {
  std::function<double(double, double)> field;
  double psi_scale = 1.0;  // |Psi| = psi_scale * |F|
};

std::optional<RealReduction> real_reduction(const greens::PathEvaluator& paths) {
  const auto& d = paths.dimer();
  if (paths.env().kind == EnvKind::FreeSpace) {
    const double z12 = d.z12();
    return RealReduction{
        [z12](double th, double thp) {
          return std::cos(kTwoPi / 2.0 * z12 * (std::cos(th) - std::cos(thp)));
        },
        2.0};
  }
  if (paths.env().kind == EnvKind::PerfectMirror) {
    const double z1 = d.z1, z2 = d.z2;
    return RealReduction{
        [z1, z2](double th, double thp) {
          const double c = std::cos(th), cp = std::cos(thp);
          return std::cos(kTwoPi * z1 * c) * std::cos(kTwoPi * z2 * cp) +
                 std::cos(kTwoPi * z1 * cp) * std::cos(kTwoPi * z2 * c);
        },
        4.0};
  }
  return std::nullopt;
}

using Vec2 = Eigen::Vector2d;

struct Segment {
  long e1, e2;
};

// Edge keys: 2*(i*n + j) for the edge (i,j)-(i+1,j), +1 for (i,j)-(i,j+1).
long h_edge(int i, int j, int n) { return 2 * (static_cast<long>(i) * n + j); }
long v_edge(int i, int j, int n) { return 2 * (static_cast<long>(i) * n + j) + 1; }

struct MarchingResult {
  std::map<long, Vec2> vertex;  // refined crossing per edge
  std::vector<Segment> segments;
};

MarchingResult marching_squares(const RealReduction& red,
                                const AngularGrid& grid,
                                const Eigen::ArrayXXd& f) {
  const int n = grid.n_theta;
  MarchingResult out;
  auto positive = [&](int i, int j) { return f(i, j) >= 0.0; };

  auto refine_edge = [&](long key, Vec2 a, Vec2 b) {
    if (out.vertex.count(key)) return;
    double fa = red.field(a.x(), a.y());
    for (int it = 0; it < 90; ++it) {
      const Vec2 mid = 0.5 * (a + b);
      const double fm = red.field(mid.x(), mid.y());
      if (red.psi_scale * std::abs(fm) < 1e-10) {
        out.vertex.emplace(key, mid);
        return;
      }
      if ((fa >= 0.0) == (fm >= 0.0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    out.vertex.emplace(key, 0.5 * (a + b));
  };

  auto node = [&](int i, int j) { return Vec2(grid.theta(i), grid.theta(j)); };

  for (int i = 0; i + 1 < n; ++i) {
    for (int j = 0; j + 1 < n; ++j) {
      const bool s00 = positive(i, j), s10 = positive(i + 1, j);
      const bool s01 = positive(i, j + 1), s11 = positive(i + 1, j + 1);
      long crossed[4];
      int nc = 0;
      if (s00 != s10) crossed[nc++] = h_edge(i, j, n);          // A
      if (s10 != s11) crossed[nc++] = v_edge(i + 1, j, n);      // B
      if (s01 != s11) crossed[nc++] = h_edge(i, j + 1, n);      // C
      if (s00 != s01) crossed[nc++] = v_edge(i, j, n);          // D
      if (nc == 0) continue;

      if (s00 != s10) refine_edge(h_edge(i, j, n), node(i, j), node(i + 1, j));
      if (s10 != s11) refine_edge(v_edge(i + 1, j, n), node(i + 1, j), node(i + 1, j + 1));
      if (s01 != s11) refine_edge(h_edge(i, j + 1, n), node(i, j + 1), node(i + 1, j + 1));
      if (s00 != s01) refine_edge(v_edge(i, j, n), node(i, j), node(i, j + 1));

      if (nc == 2) {
        out.segments.push_back({crossed[0], crossed[1]});
      } else if (nc == 4) {
        // Saddle cell; pair edges around the corners cut off by the curve.
        const Vec2 c = 0.5 * (node(i, j) + node(i + 1, j + 1));
        const bool center_pos = red.field(c.x(), c.y()) >= 0.0;
        const long A = h_edge(i, j, n), B = v_edge(i + 1, j, n);
        const long C = h_edge(i, j + 1, n), D = v_edge(i, j, n);
        if (center_pos == s00) {
          out.segments.push_back({A, B});
          out.segments.push_back({C, D});
        } else {
          out.segments.push_back({A, D});
          out.segments.push_back({B, C});
        }
      }
    }
  }
  return out;
}

std::vector<std::vector<long>> chain_segments(const MarchingResult& mr) {
  std::map<long, std::vector<int>> seg_at_edge;
  for (int s = 0; s < static_cast<int>(mr.segments.size()); ++s) {
    seg_at_edge[mr.segments[s].e1].push_back(s);
    seg_at_edge[mr.segments[s].e2].push_back(s);
  }

  std::vector<bool> used(mr.segments.size(), false);
  std::vector<std::vector<long>> chains;

  auto walk = [&](int seg0, long start_edge) {
    std::deque<long> chain{start_edge};
    int seg = seg0;
    long edge = start_edge;
    while (true) {
      used[seg] = true;
      edge = (mr.segments[seg].e1 == edge) ? mr.segments[seg].e2
                                           : mr.segments[seg].e1;
      chain.push_back(edge);
      int next = -1;
      for (int cand : seg_at_edge[edge])
        if (!used[cand]) next = cand;
      if (next < 0) break;
      seg = next;
    }
    return std::vector<long>(chain.begin(), chain.end());
  };

  // Open curves first (an endpoint edge belongs to a single segment).
  for (const auto& [edge, segs] : seg_at_edge) {
    if (segs.size() != 1 || used[segs[0]]) continue;
    chains.push_back(walk(segs[0], edge));
  }
  // Remaining closed loops.
  for (int s = 0; s < static_cast<int>(mr.segments.size()); ++s) {
    if (used[s]) continue;
    chains.push_back(walk(s, mr.segments[s].e1));
  }
  return chains;
}

bool lex_less(const Vec2& a, const Vec2& b) {
  if (a.x() != b.x()) return a.x() < b.x();
  return a.y() < b.y();
}

// Grid-cell signature used to detect swap partners among features.
std::vector<std::pair<long, long>> signature(const ZeroFeature& f,
                                             const AngularGrid& grid,
                                             bool swapped) {
  const double h = (grid.theta_max - grid.theta_min) / (grid.n_theta - 1);
  std::vector<std::pair<long, long>> sig;
  sig.reserve(f.vertices.size());
  for (const auto& v : f.vertices) {
    const long a = std::lround((v.x() - grid.theta_min) / h);
    const long b = std::lround((v.y() - grid.theta_min) / h);
    sig.emplace_back(swapped ? b : a, swapped ? a : b);
  }
  std::sort(sig.begin(), sig.end());
  sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
  return sig;
}

}  // namespace

ZeroLocus zero_locus(const greens::PathEvaluator& paths,
                     const AngularGrid& grid, double valley_threshold) {
  ZeroLocus locus;
  const int n = grid.n_theta;
  auto psi2_at = [&](double th, double thp) {
    return std::norm(corr::two_photon_amplitude(th, thp, paths));
  };
  auto amp_mismatch = [&](double th, double thp) {
    return std::abs(std::abs(paths.psi1(th) * paths.psi2(thp)) -
                    std::abs(paths.psi1(thp) * paths.psi2(th)));
  };
  auto verify_amplitudes = [&](ZeroFeature& f) {
    for (const auto& v : f.vertices)
      f.max_amplitude_mismatch =
          std::max(f.max_amplitude_mismatch, amp_mismatch(v.x(), v.y()));
  };

  const auto reduction = real_reduction(paths);
  if (reduction) {
    Eigen::ArrayXXd f(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        f(i, j) = reduction->field(grid.theta(i), grid.theta(j));

    const MarchingResult mr = marching_squares(*reduction, grid, f);
    for (auto& chain : chain_segments(mr)) {
      ZeroFeature feature;
      feature.classification = ZeroClass::Interference;
      for (long edge : chain) {
        const Vec2 v = mr.vertex.at(edge);
        feature.vertices.push_back(v);
        feature.residuals.push_back(psi2_at(v.x(), v.y()));
      }
      if (lex_less(feature.vertices.back(), feature.vertices.front())) {
        std::reverse(feature.vertices.begin(), feature.vertices.end());
        std::reverse(feature.residuals.begin(), feature.residuals.end());
      }
      verify_amplitudes(feature);
      locus.features.push_back(std::move(feature));
    }

    // Collapsed loci: machine-zero nodes away from any traced curve.
    std::map<std::pair<int, int>, bool> covered;
    for (const auto& [edge, v] : mr.vertex) {
      const long cell = edge / 2;
      const int i = static_cast<int>(cell / n), j = static_cast<int>(cell % n);
      for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj) covered[{i + di, j + dj}] = true;
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (covered.count({i, j})) continue;
        const double r = psi2_at(grid.theta(i), grid.theta(j));
        if (r < 1e-20) {
          ZeroFeature point;
          point.classification = ZeroClass::Interference;
          point.vertices.push_back(Vec2(grid.theta(i), grid.theta(j)));
          point.residuals.push_back(r);
          verify_amplitudes(point);
          locus.features.push_back(std::move(point));
        }
      }
    }
  } else {
    // Complex Psi: valley tracing on the |Psi|^2 grid.
    corr::MapRequest req;
    req.grid = grid;
    req.payload = corr::MapPayload::Psi2;
    const AngularMap<double> psi2 = corr::map_real(req, paths);
    const MinimaMask mask = minima_map(psi2, valley_threshold);
    for (int comp = 1; comp <= mask.n_components; ++comp) {
      ZeroFeature feature;
      feature.classification = ZeroClass::Interference;
      for (int i = 0; i < n; ++i) {
        int best = -1;
        for (int j = 0; j < n; ++j)
          if (mask.labels(i, j) == comp &&
              (best < 0 || psi2.values(i, j) < psi2.values(i, best)))
            best = j;
        if (best >= 0) {
          feature.vertices.push_back(Vec2(grid.theta(i), grid.theta(best)));
          feature.residuals.push_back(psi2.values(i, best));
        }
      }
      if (!feature.vertices.empty()) {
        verify_amplitudes(feature);
        locus.features.push_back(std::move(feature));
      }
    }
  }

  // Sort, then fold swap partners onto a single stored feature.
  std::sort(locus.features.begin(), locus.features.end(),
            [](const ZeroFeature& a, const ZeroFeature& b) {
              return lex_less(a.vertices.front(), b.vertices.front());
            });
  std::vector<ZeroFeature> deduped;
  std::vector<std::vector<std::pair<long, long>>> kept_sigs;
  for (auto& f : locus.features) {
    const auto sig = signature(f, grid, false);
    const auto swapped = signature(f, grid, true);
    if (sig == swapped) {
      deduped.push_back(std::move(f));
      kept_sigs.push_back(sig);
      continue;
    }
    bool is_partner = false;
    for (const auto& prev : kept_sigs)
      if (prev == swapped) {
        is_partner = true;
        break;
      }
    if (!is_partner) {
      f.has_unstored_partner = true;
      deduped.push_back(std::move(f));
      kept_sigs.push_back(sig);
    }
  }
  locus.features = std::move(deduped);

  // Trivial quenching points on the diagonal (mirror only).
  if (paths.env().kind == EnvKind::PerfectMirror) {
    for (const TrivialZero& t : trivial_zeros(paths.dimer())) {
      if (t.theta < grid.theta_min || t.theta > grid.theta_max) continue;
      ZeroFeature point;
      point.classification = ZeroClass::TrivialQuenching;
      point.vertices.push_back(Vec2(t.theta, t.theta));
      point.residuals.push_back(psi2_at(t.theta, t.theta));
      verify_amplitudes(point);
      locus.features.push_back(std::move(point));
    }
  }

  // Analytic eps-independent points (planar environments).
  if (paths.env().is_planar()) {
    const auto eps_pts = eps_independent_zeros(paths.dimer().z12());
    for (const auto& p : eps_pts.points) {
      if (!p.verified) continue;
      if (p.theta < grid.theta_min || p.theta > grid.theta_max ||
          p.theta_p < grid.theta_min || p.theta_p > grid.theta_max)
        continue;
      ZeroFeature point;
      point.classification = ZeroClass::EpsIndependent;
      point.vertices.push_back(Vec2(p.theta, p.theta_p));
      point.residuals.push_back(psi2_at(p.theta, p.theta_p));
      verify_amplitudes(point);
      locus.features.push_back(std::move(point));
    }
  }

  return locus;
}

EpsIndependentZeros eps_independent_zeros(double z12) {
  if (!(z12 > 0.0))
    throw std::invalid_argument("eps_independent_zeros: z12 must be > 0");
  EpsIndependentZeros out;
  const double bound = 2.0 * z12;
  const Complex eps_set[3] = {{-1e8, 0.0}, {2.13, 0.0}, {-5.0, 0.1}};

  for (int nn = 1; nn < bound; ++nn) {
    for (int mm = 1; mm < bound; ++mm) {
      if (nn == mm) continue;
      EpsIndependentPoint p;
      p.n = nn;
      p.m = mm;
      p.theta = std::acos(nn / bound);
      p.theta_p = std::acos(mm / bound);

      // Evaluate the four grouped terms of the substrate Psi (z1 = 0,
      // z2 = z12; the groups depend on the positions only through z12).
      double worst = 0.0;
      for (const Complex& eps : eps_set) {
        const Complex rp = specialfns::fresnel_rp(eps, p.theta);
        const Complex rpp = specialfns::fresnel_rp(eps, p.theta_p);
        const double a1 = 0.0;                                 // k z1 cos(theta)
        const double a2 = 0.0;                                 // k z1 cos(theta')
        const double b1 = kTwoPi * z12 * std::cos(p.theta);    // k z2 cos(theta)
        const double b2 = kTwoPi * z12 * std::cos(p.theta_p);  // k z2 cos(theta')
        auto ph = [](double x) { return std::polar(1.0, x); };
        const Complex g1 = ph(-a1 - b2) + ph(-a2 - b1);
        const Complex g2 = std::abs(rpp) * (ph(-a1 + b2) + ph(a2 - b1));
        const Complex g3 = std::abs(rp) * (ph(a1 - b2) + ph(-a2 + b1));
        const Complex g4 = std::abs(rp * rpp) * (ph(a1 + b2) + ph(a2 + b1));
        for (const Complex& g : {g1, g2, g3, g4})
          worst = std::max(worst, std::abs(g));
      }
      p.max_group_abs = worst;
      p.verified = worst < 1e-12;
      out.points.push_back(p);
    }
  }
  return out;
}

EpsIndependentZeros eps_independent_zeros(const DimerConfig& dimer,
                                          const Environment& env) {
  if (env.kind == EnvKind::Sphere) {
    EpsIndependentZeros out;
    out.admitted = false;  // the sphere geometry does not admit them
    return out;
  }
  return eps_independent_zeros(dimer.z12());
}

std::vector<TrivialZero> trivial_zeros(const DimerConfig& dimer) {
  std::vector<TrivialZero> out;
  const double z[2] = {dimer.z1, dimer.z2};
  for (int e = 0; e < 2; ++e) {
    for (int k = 0;; ++k) {
      const double c = (2.0 * k + 1.0) / (4.0 * z[e]);
      if (c > 1.0) break;
      out.push_back({e + 1, k, std::acos(c)});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const TrivialZero& a, const TrivialZero& b) {
              return a.theta < b.theta;
            });
  return out;
}

MinimaMask minima_map(const AngularMap<double>& psi2, double threshold) {
  MinimaMask out;
  out.grid = psi2.grid;
  out.threshold = threshold;
  const auto rows = psi2.values.rows(), cols = psi2.values.cols();
  out.mask.resize(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      out.mask(i, j) = psi2.values(i, j) < threshold;  // NaN compares false

  out.labels = Eigen::ArrayXXi::Zero(rows, cols);
  int next = 0;
  std::deque<std::pair<Eigen::Index, Eigen::Index>> queue;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!out.mask(i, j) || out.labels(i, j) != 0) continue;
      ++next;
      out.labels(i, j) = next;
      queue.push_back({i, j});
      while (!queue.empty()) {
        const auto [a, b] = queue.front();
        queue.pop_front();
        for (int da = -1; da <= 1; ++da) {
          for (int db = -1; db <= 1; ++db) {
            const Eigen::Index na = a + da, nb = b + db;
            if (na < 0 || nb < 0 || na >= rows || nb >= cols) continue;
            if (!out.mask(na, nb) || out.labels(na, nb) != 0) continue;
            out.labels(na, nb) = next;
            queue.push_back({na, nb});
          }
        }
      }
    }
  }
  out.n_components = next;
  return out;
}

int MinimaMask::label_at(double theta, double theta_p) const {
  const double h = (grid.theta_max - grid.theta_min) / (grid.n_theta - 1);
  const auto i = static_cast<Eigen::Index>(std::lround((theta - grid.theta_min) / h));
  const auto j = static_cast<Eigen::Index>(std::lround((theta_p - grid.theta_min) / h));
  if (i < 0 || j < 0 || i >= labels.rows() || j >= labels.cols()) return 0;
  return labels(i, j);
}

int intersection_count(const std::vector<const MinimaMask*>& masks) {
  if (masks.empty()) return 0;
  int count = 0;
  const auto rows = masks[0]->mask.rows(), cols = masks[0]->mask.cols();
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      bool all = true;
      for (const MinimaMask* m : masks) all = all && m->mask(i, j);
      count += all ? 1 : 0;
    }
  return count;
}

int symmetric_difference_count(const MinimaMask& a, const MinimaMask& b) {
  int count = 0;
  for (Eigen::Index i = 0; i < a.mask.rows(); ++i)
    for (Eigen::Index j = 0; j < a.mask.cols(); ++j)
      count += (a.mask(i, j) != b.mask(i, j)) ? 1 : 0;
  return count;
}

}  // namespace dimerg2::zeros
