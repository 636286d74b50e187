#pragma once

#include "dpdlogit/hypothesis.hpp"

namespace dpdlogit {

/// Point mass (x_t, y_t) added to the model distribution.
struct ContaminationPoint {
  Vector x_t;
  double y_t = 0.0;

  /// Throws if x_t has the wrong length, does not start with 1, or y_t is
  /// not binary.
  void validate(Eigen::Index dim) const;
};

struct IfResult {
  Vector if_vector;
  TuningParameter lambda{0.0};
};

/// J and Σ evaluated at β₀.
struct FitContext {
  Matrix j;
  Matrix sigma;

  static FitContext from(const FitResult& fit);
  static FitContext from(const Information& info);
};

/// J⁻¹ Ψ_λ(x_t, y_t, β₀).
IfResult if_mdpde(const ContaminationPoint& w, const Coefficients& beta0,
                  const Matrix& j, TuningParameter lambda);

/// Second-order influence of the Wald-type statistic at the null:
/// IF^T M (M^TΣM)⁻¹ M^T IF. Throws NullViolated unless M^Tβ₀ = m.
double if2_wald(const ContaminationPoint& w, const Coefficients& beta0,
                const FitContext& ctx, const LinearHypothesis& hyp,
                TuningParameter lambda);

/// Power influence function K*_r(s^T d) s^T IF with
/// s^T = d^T M (M^TΣM)⁻¹ M^T.
double pif(const ContaminationPoint& w, const Vector& d, const Coefficients& beta0,
           const FitContext& ctx, const LinearHypothesis& hyp, TuningParameter lambda,
           double alpha);

/// Level influence function; identically zero at every order.
double lif(const ContaminationPoint& w, const Coefficients& beta0,
           const FitContext& ctx, const LinearHypothesis& hyp, TuningParameter lambda,
           double alpha);

/// Fixed-design influence function for contamination of the response in
/// group `group_index` (0-based), J*⁻¹ Ψ_λ(x_i, y_t, β₀). With `all_groups`
/// every group is contaminated at y_t and the Ψ terms are summed.
IfResult if_mdpde_fixed_design(Eigen::Index group_index, double y_t,
                               const GroupedDataset& data, const Coefficients& beta0,
                               TuningParameter lambda, bool all_groups = false);

/// All-groups contamination with a separate point y_t[i] for each group.
IfResult if_mdpde_fixed_design(const Vector& y_t, const GroupedDataset& data,
                               const Coefficients& beta0, TuningParameter lambda);

}  // namespace dpdlogit
