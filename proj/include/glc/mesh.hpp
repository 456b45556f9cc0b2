#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace glc {

/// Node sets of the staggered spatial mesh on (0,1) with dx = 1/(M+1).
///
///   Interior   x_1 .. x_M                 (M nodes)
///   Closure    x_0 .. x_{M+1}             (M+2 nodes)
///   Dual       x_{j+1/2}, j = 0..M        (M+1 nodes)
///   Boundary   {x_0, x_{M+1}}             (2 nodes)
enum class SpaceSet { Interior, Closure, Dual, Boundary };

/// Node sets of the time mesh on (0,T) with dt = T/N.
///
///   Primal        t^1 .. t^N              (N nodes)
///   PrimalClosed  t^0 .. t^N              (N+1 nodes)
///   Dual          t^{n+1/2}, n = 0..N-1   (N nodes)
///   DualClosed    t^{n+1/2}, n = 0..N     (N+1 nodes, includes T + dt/2)
///   Boundary      {0, T}                  (2 nodes)
enum class TimeSet { Primal, PrimalClosed, Dual, DualClosed, Boundary, None };

const char* to_string(SpaceSet s);
const char* to_string(TimeSet t);

/// Uniform spatial mesh of (0,1): x_j = j*dx, dx = 1/(M+1).
struct SpaceMesh {
  int M = 0;
  double dx = 0.0;

  static SpaceMesh create(int interior_count);

  int cardinality(SpaceSet set) const;
  /// Physical position of node `idx` within `set`.
  double position(SpaceSet set, int idx) const;
  /// All node positions of `set`, ordered.
  std::vector<double> positions(SpaceSet set) const;
};

/// Uniform time mesh of (0,T): t^n = n*dt, dt = T/N. The extended dual
/// mesh carries one node past T at T + dt/2.
struct TimeMesh {
  int N = 0;
  double dt = 0.0;
  double T = 0.0;

  static TimeMesh create(int step_count, double horizon);

  int cardinality(TimeSet set) const;
  double position(TimeSet set, int idx) const;
  std::vector<double> positions(TimeSet set) const;
};

/// Builds the space/time mesh pair. Rejects M < 2, N < 2, T <= 0.
std::pair<SpaceMesh, TimeMesh> build_meshes(int M, int N, double T);

/// Open subinterval (a, b) of (0, 1). Mesh membership uses the half-open
/// convention [a, b) so that dyadic refinement is monotone.
struct Interval {
  double a = 0.0;
  double b = 0.0;

  double length() const { return b - a; }
  double midpoint() const { return 0.5 * (a + b); }
  bool contains_node(double x) const { return x >= a && x < b; }
  /// True if [other.a, other.b] is strictly inside (a, b).
  bool strictly_contains(const Interval& other) const {
    return a < other.a && other.b < b;
  }
  bool valid_in_unit() const { return 0.0 <= a && a < b && b <= 1.0; }
};

}  // namespace glc
