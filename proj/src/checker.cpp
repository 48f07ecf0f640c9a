#include "foliant/checker.hpp"

#include <cmath>

#include "foliant/errors.hpp"

namespace foliant {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Supported: return "SUPPORTED";
    case Verdict::TransversalityFails: return "TRANSVERSALITY_FAILS";
    case Verdict::LipschitzBlowup: return "LIPSCHITZ_BLOWUP";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

const char* to_string(TheoremTag t) {
  switch (t) {
    case TheoremTag::Main: return "main";
    case TheoremTag::Cid: return "cid";
    case TheoremTag::Hyperplane: return "hyperplane";
    case TheoremTag::StettnerNowak: return "stettner-nowak";
  }
  return "?";
}

namespace {

Verdict combine(double transversality_value, double threshold,
                const LipschitzEstimate& a, const LipschitzEstimate& b) {
  if (std::abs(transversality_value) <= threshold) {
    return Verdict::TransversalityFails;
  }
  if (a.blowup || b.blowup) return Verdict::LipschitzBlowup;
  return Verdict::Supported;
}

UniquenessReport run_main(const VectorField& f, const Foliation& phi,
                          const CheckParams& params, TheoremTag tag) {
  UniquenessReport report;
  report.theorem = tag;
  report.params = params;
  try {
    TransversalityResult tv = transversality(f, phi);
    report.transversality_value = tv.value;
    report.normal_at_p0 = tv.normal;

    SampleParams sp;
    sp.region = params.region;
    sp.budget = params.budget;
    sp.seed = params.seed;

    auto phi_copy = phi;
    auto f_copy = f;
    VectorMap composed = [f_copy, phi_copy](const Vector& w) {
      return f_copy(phi_copy.forward(w));
    };
    report.lip_f_phi = lipschitz_fixing_first(composed, phi.dim(), sp);

    VectorMap inv_jac = [phi_copy](const Vector& w) {
      Matrix j = phi_copy.jacobian(w);
      if (std::abs(mat_det(j)) <= 1e-10) {
        throw SingularMatrixError(
            "foliation Jacobian is singular inside the sampling box");
      }
      return flatten(mat_inverse(j));
    };
    SampleParams sp2 = sp;
    sp2.seed = sp.seed + 1;
    report.lip_inv_jac = lipschitz_fixing_first(inv_jac, phi.dim(), sp2);

    report.verdict = combine(report.transversality_value,
                             params.transversality_threshold, report.lip_f_phi,
                             report.lip_inv_jac);
  } catch (const Error& e) {
    report.verdict = Verdict::Inconclusive;
    report.note = e.what();
  }
  return report;
}

}  // namespace

UniquenessReport check_main(const VectorField& f, const Foliation& phi,
                            const CheckParams& params) {
  return run_main(f, phi, params, TheoremTag::Main);
}

UniquenessReport check_cid(const VectorField& f, const Vector& p0,
                           const CheckParams& params) {
  UniquenessReport report;
  report.theorem = TheoremTag::Cid;
  report.params = params;
  try {
    Foliation phi = identity_foliation(p0);
    report = run_main(f, phi, params, TheoremTag::Cid);
  } catch (const Error& e) {
    report.verdict = Verdict::Inconclusive;
    report.note = e.what();
  }
  return report;
}

UniquenessReport check_hyperplane(const VectorField& f, const Vector& p0,
                                  const OrthonormalBasis& v,
                                  const CheckParams& params) {
  UniquenessReport report;
  report.theorem = TheoremTag::Hyperplane;
  report.params = params;
  try {
    Foliation phi = affine_foliation(p0, v.normal, v);
    report = run_main(f, phi, params, TheoremTag::Hyperplane);
  } catch (const Error& e) {
    report.verdict = Verdict::Inconclusive;
    report.note = e.what();
  }
  return report;
}

UniquenessReport check_stettner_nowak(const ScalarMap& f, const Vector& t0x0,
                                      const Vector& u,
                                      const CheckParams& params) {
  UniquenessReport report;
  report.theorem = TheoremTag::StettnerNowak;
  report.params = params;
  try {
    if (t0x0.dim() != 2 || u.dim() != 2) {
      throw DimensionError("check_stettner_nowak: expects dimension 2");
    }
    if (norm(u) <= 0.0) {
      throw DomainError("check_stettner_nowak: direction u must be nonzero");
    }
    double f0 = f(t0x0);
    if (!std::isfinite(f0)) {
      throw EvalError("check_stettner_nowak: f is non-finite at (t0, x0)");
    }
    report.transversality_value = u[1] - f0 * u[0];
    Vector uhat = normalized(u);
    report.normal_at_p0 = Vector{-uhat[1], uhat[0]};

    SampleParams sp;
    sp.region = params.region;
    sp.budget = params.budget;
    sp.seed = params.seed;
    report.lip_f_phi = lipschitz_along_direction(f, t0x0, u, sp);
    // The frame is affine, so the (Φ')^{-1} half of (C2) is constant.
    report.lip_inv_jac = LipschitzEstimate{};
    report.lip_inv_jac.region = params.region;
    report.lip_inv_jac.seed = params.seed + 1;

    report.verdict = combine(report.transversality_value,
                             params.transversality_threshold, report.lip_f_phi,
                             report.lip_inv_jac);
  } catch (const Error& e) {
    report.verdict = Verdict::Inconclusive;
    report.note = e.what();
  }
  return report;
}

}  // namespace foliant
