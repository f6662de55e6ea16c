#include "klab/ratregion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace klab {

Rat::Rat(long long n, long long d) {
  if (d == 0) throw std::invalid_argument("Rat: zero denominator");
  if (d < 0) { n = -n; d = -d; }
  long long g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

Rat Rat::operator+(const Rat& o) const { return Rat(num * o.den + o.num * den, den * o.den); }
Rat Rat::operator-(const Rat& o) const { return Rat(num * o.den - o.num * den, den * o.den); }
Rat Rat::operator*(const Rat& o) const { return Rat(num * o.num, den * o.den); }
Rat Rat::operator/(const Rat& o) const {
  if (o.num == 0) throw std::invalid_argument("Rat: division by zero");
  return Rat(num * o.den, den * o.num);
}
bool Rat::operator<(const Rat& o) const { return num * o.den < o.num * den; }

std::string Rat::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

bool HalfPlane::contains(const RatPoint& p) const {
  return ca * p.a + cb * p.b <= c0;
}
bool HalfPlane::on_boundary(const RatPoint& p) const {
  return ca * p.a + cb * p.b == c0;
}

std::vector<HalfPlane> necessary_half_planes(int n) {
  // Coefficients are the exponent inequalities cleared of denominators:
  //   ball:    2n >= (2n+1)/p            -> (2n+1) a <= 2n
  //   annulus: 1/q >= (1/(2n+1)) (1/p)   -> a - (2n+1) b <= 0
  //   knapp:   n + 3n/q >= (n+2)/p       -> (n+2) a - 3n b <= n
  //   shell:   2n + 1/q >= (2n+1)/p      -> (2n+1) a - b <= 2n
  // together with p <= q and 0 <= 1/p, 1/q <= 1.
  std::vector<HalfPlane> v;
  v.push_back({Rat(2 * n + 1), Rat(0), Rat(2 * n), "ball"});
  v.push_back({Rat(1), Rat(-(2 * n + 1)), Rat(0), "annulus"});
  v.push_back({Rat(n + 2), Rat(-3 * n), Rat(n), "knapp"});
  v.push_back({Rat(2 * n + 1), Rat(-1), Rat(2 * n), "shell"});
  v.push_back({Rat(-1), Rat(1), Rat(0), "p<=q"});
  v.push_back({Rat(1), Rat(0), Rat(1), "a<=1"});
  v.push_back({Rat(-1), Rat(0), Rat(0), "a>=0"});
  v.push_back({Rat(0), Rat(1), Rat(1), "b<=1"});
  v.push_back({Rat(0), Rat(-1), Rat(0), "b>=0"});
  return v;
}

std::vector<RatPoint> quadrilateral_vertices(int n) {
  long long N = n;
  Rat q23(2 * N, 2 * N + 1);
  long long d4 = 2 * N * N + 2 * N + 2;
  return {
      {Rat(0), Rat(0)},
      {q23, q23},
      {q23, Rat(1, 2 * N + 1)},
      {Rat(N * (2 * N + 1), d4), Rat(N, d4)},
  };
}

std::vector<RatPoint> triangle_vertices(int n) {
  long long N = n;
  return {
      {Rat(0), Rat(0)},
      {Rat(1), Rat(1)},
      {Rat(2 * N + 1, 2 * N + 2), Rat(1, 2 * N + 2)},
  };
}

std::vector<RatPoint> intersection_vertices(const std::vector<HalfPlane>& planes) {
  std::vector<RatPoint> pts;
  const size_t m = planes.size();
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i + 1; j < m; ++j) {
      Rat det = planes[i].ca * planes[j].cb - planes[j].ca * planes[i].cb;
      if (det.num == 0) continue;
      Rat a = (planes[i].c0 * planes[j].cb - planes[j].c0 * planes[i].cb) / det;
      Rat b = (planes[i].ca * planes[j].c0 - planes[j].ca * planes[i].c0) / det;
      RatPoint p{a, b};
      bool inside = true;
      for (const auto& h : planes) {
        if (!h.contains(p)) { inside = false; break; }
      }
      if (!inside) continue;
      bool dup = false;
      for (const auto& q : pts) {
        if (q == p) { dup = true; break; }
      }
      if (!dup) pts.push_back(p);
    }
  }
  if (pts.size() < 3) return pts;

  // Counterclockwise sweep around the centroid; the intersection is convex
  // so half-classification plus a cross-product sign gives a total order.
  Rat cx(0), cy(0);
  for (const auto& p : pts) { cx = cx + p.a; cy = cy + p.b; }
  Rat mlen(static_cast<long long>(pts.size()));
  cx = cx / mlen;
  cy = cy / mlen;
  auto half = [&](const RatPoint& p) {
    Rat db = p.b - cy;
    if (Rat(0) < db) return 0;
    if (db.num == 0 && Rat(0) < (p.a - cx)) return 0;
    return 1;
  };
  std::sort(pts.begin(), pts.end(), [&](const RatPoint& p, const RatPoint& q) {
    int hp = half(p), hq = half(q);
    if (hp != hq) return hp < hq;
    Rat cross = (p.a - cx) * (q.b - cy) - (p.b - cy) * (q.a - cx);
    return Rat(0) < cross;
  });
  return pts;
}

RegionClass classify_point(const std::vector<HalfPlane>& planes, const RatPoint& p) {
  bool boundary = false;
  for (const auto& h : planes) {
    if (!h.contains(p)) return RegionClass::Outside;
    if (h.on_boundary(p)) boundary = true;
  }
  return boundary ? RegionClass::Boundary : RegionClass::Interior;
}

RegionClass classify_in_polygon(const std::vector<RatPoint>& verts, const RatPoint& p) {
  // Convex vertices in either cyclic orientation; the shoelace sign fixes
  // which side of each edge is inside.
  Rat area2(0);
  const size_t m = verts.size();
  for (size_t i = 0; i < m; ++i) {
    const RatPoint& u = verts[i];
    const RatPoint& w = verts[(i + 1) % m];
    area2 = area2 + (u.a * w.b - w.a * u.b);
  }
  const Rat sign = area2 < Rat(0) ? Rat(-1) : Rat(1);
  bool boundary = false;
  for (size_t i = 0; i < m; ++i) {
    const RatPoint& u = verts[i];
    const RatPoint& w = verts[(i + 1) % m];
    Rat cross = sign * ((w.a - u.a) * (p.b - u.b) - (w.b - u.b) * (p.a - u.a));
    if (cross < Rat(0)) return RegionClass::Outside;
    if (cross.num == 0) {
      // On the edge line; also require the point between the endpoints.
      Rat dot = (p.a - u.a) * (w.a - u.a) + (p.b - u.b) * (w.b - u.b);
      Rat len2 = (w.a - u.a) * (w.a - u.a) + (w.b - u.b) * (w.b - u.b);
      if (Rat(0) <= dot && dot <= len2) boundary = true;
      else return RegionClass::Outside;
    }
  }
  return boundary ? RegionClass::Boundary : RegionClass::Interior;
}

const char* region_class_name(RegionClass c) {
  switch (c) {
    case RegionClass::Interior: return "interior";
    case RegionClass::Boundary: return "boundary";
    default: return "outside";
  }
}

bool cyclic_equal(const std::vector<RatPoint>& a, const std::vector<RatPoint>& b) {
  const size_t m = a.size();
  if (b.size() != m) return false;
  if (m == 0) return true;
  for (int dir = 0; dir < 2; ++dir) {
    for (size_t off = 0; off < m; ++off) {
      bool ok = true;
      for (size_t i = 0; i < m && ok; ++i) {
        const size_t j = dir == 0 ? (off + i) % m : (off + m - i) % m;
        ok = a[i] == b[j];
      }
      if (ok) return true;
    }
  }
  return false;
}

Rat rat_from_double(double v, long long max_den) {
  // Continued-fraction expansion, stopping when the convergent reproduces v
  // to near machine precision or the denominator budget runs out.
  bool neg = v < 0;
  double x = neg ? -v : v;
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    if (fl > 4.0e18) break;
    long long a = static_cast<long long>(fl);
    long long p2 = a * p1 + p0;
    long long q2 = a * q1 + q0;
    if (q2 > max_den || q2 <= 0) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::abs(approx - x) <= 1e-12 * std::max(1.0, x)) break;
    double rem = frac - fl;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) return Rat(0);
  return Rat(neg ? -p1 : p1, q1);
}

}  // namespace klab
