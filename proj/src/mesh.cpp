#include "glc/mesh.hpp"

namespace glc {

const char* to_string(SpaceSet s) {
  switch (s) {
    case SpaceSet::Interior: return "interior";
    case SpaceSet::Closure: return "closure";
    case SpaceSet::Dual: return "dual";
    case SpaceSet::Boundary: return "boundary";
  }
  return "?";
}

const char* to_string(TimeSet t) {
  switch (t) {
    case TimeSet::Primal: return "primal";
    case TimeSet::PrimalClosed: return "primal_closed";
    case TimeSet::Dual: return "dual";
    case TimeSet::DualClosed: return "dual_closed";
    case TimeSet::Boundary: return "boundary";
    case TimeSet::None: return "none";
  }
  return "?";
}

SpaceMesh SpaceMesh::create(int interior_count) {
  if (interior_count < 2)
    throw std::invalid_argument("SpaceMesh: M must be >= 2, got " +
                                std::to_string(interior_count));
  SpaceMesh m;
  m.M = interior_count;
  m.dx = 1.0 / static_cast<double>(interior_count + 1);
  return m;
}

int SpaceMesh::cardinality(SpaceSet set) const {
  switch (set) {
    case SpaceSet::Interior: return M;
    case SpaceSet::Closure: return M + 2;
    case SpaceSet::Dual: return M + 1;
    case SpaceSet::Boundary: return 2;
  }
  return 0;
}

double SpaceMesh::position(SpaceSet set, int idx) const {
  switch (set) {
    case SpaceSet::Interior: return (idx + 1) * dx;
    case SpaceSet::Closure: return idx * dx;
    case SpaceSet::Dual: return (idx + 0.5) * dx;
    case SpaceSet::Boundary: return idx == 0 ? 0.0 : 1.0;
  }
  return 0.0;
}

std::vector<double> SpaceMesh::positions(SpaceSet set) const {
  std::vector<double> xs(cardinality(set));
  for (int j = 0; j < static_cast<int>(xs.size()); ++j) xs[j] = position(set, j);
  return xs;
}

TimeMesh TimeMesh::create(int step_count, double horizon) {
  if (step_count < 2)
    throw std::invalid_argument("TimeMesh: N must be >= 2, got " +
                                std::to_string(step_count));
  if (!(horizon > 0.0))
    throw std::invalid_argument("TimeMesh: T must be > 0");
  TimeMesh m;
  m.N = step_count;
  m.T = horizon;
  m.dt = horizon / static_cast<double>(step_count);
  return m;
}

int TimeMesh::cardinality(TimeSet set) const {
  switch (set) {
    case TimeSet::Primal: return N;
    case TimeSet::PrimalClosed: return N + 1;
    case TimeSet::Dual: return N;
    case TimeSet::DualClosed: return N + 1;
    case TimeSet::Boundary: return 2;
    case TimeSet::None: return 1;
  }
  return 0;
}

double TimeMesh::position(TimeSet set, int idx) const {
  switch (set) {
    case TimeSet::Primal: return (idx + 1) * dt;
    case TimeSet::PrimalClosed: return idx * dt;
    case TimeSet::Dual: return (idx + 0.5) * dt;
    case TimeSet::DualClosed: return (idx + 0.5) * dt;
    case TimeSet::Boundary: return idx == 0 ? 0.0 : T;
    case TimeSet::None: return 0.0;
  }
  return 0.0;
}

std::vector<double> TimeMesh::positions(TimeSet set) const {
  std::vector<double> ts(cardinality(set));
  for (int n = 0; n < static_cast<int>(ts.size()); ++n) ts[n] = position(set, n);
  return ts;
}

std::pair<SpaceMesh, TimeMesh> build_meshes(int M, int N, double T) {
  return {SpaceMesh::create(M), TimeMesh::create(N, T)};
}

}  // namespace glc
