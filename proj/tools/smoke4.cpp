// Batch 4 scratch checks: rational region geometry and family scaling.
#include <chrono>
#include <cstdio>

#include "klab/families.hpp"
#include "klab/ratregion.hpp"

using namespace klab;

static void print_pts(const char* tag, const std::vector<RatPoint>& v) {
  std::printf("%s:", tag);
  for (const auto& p : v) std::printf(" (%s,%s)", p.a.str().c_str(), p.b.str().c_str());
  std::printf("\n");
}

int main() {
  for (int n = 1; n <= 6; ++n) {
    auto planes = necessary_half_planes(n);
    auto quad = quadrilateral_vertices(n);
    auto enumer = intersection_vertices(planes);
    bool match = cyclic_equal(quad, enumer);
    std::printf("n=%d vertices %zu match=%d\n", n, enumer.size(), match ? 1 : 0);
    if (n <= 2) {
      print_pts("  closed", quad);
      print_pts("  enum  ", enumer);
    }
  }

  // classification examples
  {
    auto p1 = necessary_half_planes(1);
    auto p2 = necessary_half_planes(2);
    std::printf("(0,0) n=1: %s\n", region_class_name(classify_point(p1, {Rat(0), Rat(0)})));
    std::printf("(0.7,0.3) n=2: %s\n",
                region_class_name(classify_point(p2, {Rat(7, 10), Rat(3, 10)})));
    std::printf("(1,0) n=1: %s n=2: %s\n",
                region_class_name(classify_point(p1, {Rat(1), Rat(0)})),
                region_class_name(classify_point(p2, {Rat(1), Rat(0)})));
    auto tri = triangle_vertices(1);
    std::printf("tri (3/4,1/4) in: %s\n",
                region_class_name(classify_in_polygon(tri, {Rat(3, 4), Rat(1, 4)})));
    std::printf("rat_from_double(1.25)=%s (0.7)=%s\n", rat_from_double(1.25).str().c_str(),
                rat_from_double(0.7).str().c_str());
  }

  // family smoke: cheap ladder, reduced samples
  GroupContext ctx = GroupContext::standard(1);
  FamilyEvalConfig cfg;
  cfg.samples = 40;
  cfg.seed = 7;
  for (FamilyKind k : {FamilyKind::Ball, FamilyKind::Annulus, FamilyKind::Knapp,
                       FamilyKind::SingleShell}) {
    Family fam{k, 1};
    std::vector<double> deltas = {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64};
    auto t0 = std::chrono::steady_clock::now();
    try {
      auto ex = run_scaling(ctx, fam, deltas, cfg);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::printf("%-12s slope=%8.4f (pred %.2f) stderr=%.3g guard=%.2g vals:", family_name(k),
                  ex.fit.slope, fam.predicted_slope(), ex.fit.stderr_slope,
                  ex.points.back().guard_rel);
      for (auto& p : ex.points) std::printf(" %.4g", p.value);
      std::printf("  [%.1fs]\n", secs);
    } catch (const std::exception& e) {
      std::printf("%-12s FAILED: %s\n", family_name(k), e.what());
    }
  }
  return 0;
}
