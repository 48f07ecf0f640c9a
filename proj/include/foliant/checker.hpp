#pragma once

#include <cstdint>
#include <string>

#include "foliant/field.hpp"
#include "foliant/foliation.hpp"
#include "foliant/transform.hpp"

// Assembles the transversality condition (C1) and the sampled Lipschitz
// condition along the foliation (C2) into a uniqueness verdict.  Verdicts
// say SUPPORTED, never "proven": sampling yields evidence, not certificates.

namespace foliant {

enum class Verdict { Supported, TransversalityFails, LipschitzBlowup, Inconclusive };
enum class TheoremTag { Main, Cid, Hyperplane, StettnerNowak };

const char* to_string(Verdict v);
const char* to_string(TheoremTag t);

struct CheckParams {
  double region = 0.25;  // sampling box radius around (0,0)
  int budget = 4096;
  std::uint64_t seed = 42;
  double transversality_threshold = 1e-6;
};

struct UniquenessReport {
  TheoremTag theorem = TheoremTag::Main;
  double transversality_value = 0.0;
  Vector normal_at_p0;
  LipschitzEstimate lip_f_phi;    // F∘Φ fixing the first variable
  LipschitzEstimate lip_inv_jac;  // (Φ')^{-1} flattened row-major
  Verdict verdict = Verdict::Inconclusive;
  CheckParams params;
  std::string note;  // reason when inconclusive
};

// Theorem 2.3: transversality at p0 plus Lipschitz estimates for F∘Φ and
// (Φ')^{-1}.  TRANSVERSALITY_FAILS takes precedence over blow-up flags;
// construction/evaluation errors yield INCONCLUSIVE with a reason.
UniquenessReport check_main(const VectorField& f, const Foliation& phi,
                            const CheckParams& params = {});

// Theorem 1.1 special case: identity foliation at p0 (transversality value
// is F1(p0)).
UniquenessReport check_cid(const VectorField& f, const Vector& p0,
                           const CheckParams& params = {});

// Hyperplane special case: affine foliation sweeping translates of V along
// its unit normal; transversality value is <normal, F(p0)>.
UniquenessReport check_hyperplane(const VectorField& f, const Vector& p0,
                                  const OrthonormalBasis& v,
                                  const CheckParams& params = {});

// Scalar Stettner-Nowak condition: transversality value u2 - f(t0,x0) u1,
// Lipschitz sampled along the direction u.
UniquenessReport check_stettner_nowak(const ScalarMap& f, const Vector& t0x0,
                                      const Vector& u,
                                      const CheckParams& params = {});

}  // namespace foliant
