#pragma once
// Exact rational geometry for the (1/p, 1/q) exponent square: the necessary
// condition half-planes cut out a quadrilateral whose vertices are known in
// closed form; everything here is int64 rational arithmetic, no floating
// point, so agreement means agreement.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace klab {

struct Rat {
  long long num = 0, den = 1;

  Rat() = default;
  Rat(long long n) : num(n), den(1) {}
  Rat(long long n, long long d);

  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const;
  bool operator<=(const Rat& o) const { return *this < o || *this == o; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
};

struct RatPoint {
  Rat a, b;  // (1/p, 1/q)
  bool operator==(const RatPoint& o) const { return a == o.a && b == o.b; }
};

// Half-plane ca * a + cb * b <= c0.
struct HalfPlane {
  Rat ca, cb, c0;
  std::string name;
  bool contains(const RatPoint& p) const;
  bool on_boundary(const RatPoint& p) const;
};

// The necessary-condition catalog for given n: ball, annulus, knapp, shell
// volume bound, p <= q, and the unit square bounds.
std::vector<HalfPlane> necessary_half_planes(int n);

// Closed-form corners Q1..Q4 of the maximal-operator region, in cyclic order.
std::vector<RatPoint> quadrilateral_vertices(int n);

// Corners of the single-average region triangle.
std::vector<RatPoint> triangle_vertices(int n);

// Vertex enumeration of the intersection of the half-planes: all pairwise
// boundary intersections that satisfy every constraint, deduplicated and
// sorted counterclockwise.
std::vector<RatPoint> intersection_vertices(const std::vector<HalfPlane>& planes);

// Same cyclic sequence up to rotation and reflection.
bool cyclic_equal(const std::vector<RatPoint>& a, const std::vector<RatPoint>& b);

enum class RegionClass { Interior, Boundary, Outside };
RegionClass classify_point(const std::vector<HalfPlane>& planes, const RatPoint& p);
RegionClass classify_in_polygon(const std::vector<RatPoint>& verts, const RatPoint& p);
const char* region_class_name(RegionClass c);

// Convert a double that is an exact small rational (CLI input like 1.25) to
// Rat with denominator up to max_den; falls back to nearest.
Rat rat_from_double(double v, long long max_den = 1000000);

}  // namespace klab
