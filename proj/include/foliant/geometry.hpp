#pragma once

#include <vector>

#include "foliant/linalg.hpp"

// Rotation geometry on the unit sphere of R^{n+1}: the skew outer product,
// the explicit SO(n+1) rotation sending one unit vector to another, bases
// of hyperplanes identified by their unit normals, and continuous lifting
// of projective paths to the sphere.

namespace foliant {

// Refusal threshold on 1 + <u,v>; below it the rotation formula has a pole.
inline constexpr double kAntipodalTol = 1e-8;

// y xᵀ - x yᵀ (antisymmetric).
Matrix skew_outer(const Vector& x, const Vector& y);

// R = Id + K + K²/(1+<u,v>) with K = v uᵀ - u vᵀ.  R ∈ SO(n+1), R u = v.
// Requires unit u, v; throws AntipodalError when 1 + <u,v> <= antipodal_tol.
Matrix rotation_between(const Vector& u, const Vector& v,
                        double antipodal_tol = kAntipodalTol);

// rotation_between(u, (t·wbar - u)/|t·wbar - u|) for small t.  Probes the
// direction-dependent limits of R as v → -u.  Requires unit wbar ⊥ u and
// 0 < t ≤ 1e-2.
Matrix rotation_limit_probe(const Vector& u, const Vector& wbar, double t);

// A direction in R^{n+1} up to sign.  Canonical representative: unit norm,
// first nonzero coordinate (1e-12 threshold) positive.
class ProjectivePoint {
 public:
  explicit ProjectivePoint(const Vector& v);

  const Vector& rep() const { return rep_; }
  std::size_t dim() const { return rep_.dim(); }  // ambient dimension
  bool flipped() const { return flipped_; }       // input sign was reversed

 private:
  Vector rep_;
  bool flipped_ = false;
};

struct OrthonormalBasis {
  std::vector<Vector> columns;  // n unit vectors spanning normal⊥
  Vector normal;                // unit vector they are all orthogonal to
};

// Basis of the hyperplane normal to v: the last n columns of
// rotation_between(e1, rep).  If rep ≈ -e1 the sign-flipped representative
// is used instead; `normal` records the representative actually rotated to.
OrthonormalBasis hyperplane_basis(const ProjectivePoint& v);

// Orthonormalize `spanning` (must be independent, dim-1 many vectors in
// dim-space) and complete with the unit normal of their span.
OrthonormalBasis orthonormalize_hyperplane(const std::vector<Vector>& spanning);

// Unit-vector representatives with consecutive inner products > 0.  The
// first representative is the canonical one (which never equals -e1).
// Throws LiftError when a consecutive angular gap in P^n reaches π/4.
std::vector<Vector> lift_path(const std::vector<ProjectivePoint>& samples);

}  // namespace foliant
