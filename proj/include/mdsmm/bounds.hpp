#pragma once

// Generalization bounds for the multi-distance hypothesis class
// {(w, Z): ‖w‖ <= B, ‖Z‖ <= D} and the linear reference class {W: ‖W‖ <= B'}, plus Monte-Carlo
// estimates of their empirical Rademacher complexity. Bias is excluded from both classes.

#include "mdsmm/datagen.hpp"
#include "mdsmm/errors.hpp"
#include "mdsmm/matcore.hpp"
#include "mdsmm/sample.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

namespace mdsmm {

/// R = max ‖X‖, R1 = max ‖X o X‖_1, R2 = max ‖X o X‖_inf over a sample set.
struct DataRadii {
    double r = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
};

[[nodiscard]] DataRadii data_radii(std::span<const LabeledSample> samples);

enum class TheoremId { thm1, svm_ref, thm2, thm3, thm4, thm5 };

[[nodiscard]] std::string to_string(TheoremId id);
/// Accepts "thm1", "svm-ref", "thm2".."thm5"; throws input_error otherwise.
[[nodiscard]] TheoremId parse_theorem_id(const std::string &text);

/// How the loss cap c is obtained. `hinge` uses 1 + (largest attainable |margin|), i.e.
/// 1 + B D sqrt(R1 + R2) for the multi-distance class and 1 + B' R for the linear class.
enum class LossCapMode { explicit_value, hinge };

enum class RademacherSource { monte_carlo, analytic_cap };

struct BoundInputs {
    double empirical_loss = 0.0;
    double lipschitz = 1.0;
    double b_cap = 1.0;
    double d_cap = 1.0;
    double b_prime = 1.0;
    LossCapMode cap_mode = LossCapMode::explicit_value;
    double loss_cap = 1.0;
    double delta = 0.05;
    std::size_t n_samples = 1;
    DataRadii radii;

    // independent-block reduction: mu blocks pairs of size a, 2 mu a = N
    std::optional<std::size_t> mu;
    std::optional<std::size_t> block_size;
    std::optional<double> beta_a;

    // Markov chain / VC parameters
    std::optional<double> beta1;
    std::optional<double> doeblin_t;
    std::optional<double> vc_dim;
    std::optional<double> c_tilde;
};

struct BoundReport {
    TheoremId theorem = TheoremId::thm1;
    BoundInputs inputs;
    double rhs = 0.0;
    double loss_cap_used = 0.0;
    double complexity_term = 0.0;
    double deviation_term = 0.0;
    std::optional<double> delta_prime;
    std::optional<double> gamma0;
    std::optional<double> rademacher;
    std::optional<RademacherSource> rademacher_source;
    bool preconditions_hold = true;
};

/// L_S + 2 rho B D sqrt(R1 + R2) / sqrt(N) + c sqrt(2 ln(2/delta) / N).
[[nodiscard]] BoundReport bound_thm1(const BoundInputs &in);
/// L_S + 2 rho B' R / sqrt(N) + c sqrt(2 ln(2/delta) / N).
[[nodiscard]] BoundReport bound_svm_ref(const BoundInputs &in);

struct CorollaryComparison {
    /// B D sqrt(R1 + R2) < B' R (strict).
    bool mdsmm_smaller = false;
    BoundReport mdsmm;
    BoundReport svm;
};

[[nodiscard]] CorollaryComparison compare_corollary(const BoundInputs &in);
[[nodiscard]] CorollaryComparison compare_corollary(const BoundInputs &in, const DataRadii &radii);

/// Stationary beta-mixing sample: L_S + 2 rho B D sqrt(R1+R2)/sqrt(mu) + c sqrt(ln(2/delta')/(2 mu)),
/// delta' = delta - 2 (mu - 1) beta(a). Throws infeasible_bound_error when 2 (mu - 1) beta(a) >= delta.
[[nodiscard]] BoundReport bound_thm2_mixing(const BoundInputs &in);

/// ‖Gamma_0‖ = sqrt(2) / (1 - beta1^(1/(2t))).
[[nodiscard]] double doeblin_gamma0(double beta1, double t);

/// Uniformly ergodic Markov chain sample:
/// L_S + 8 sqrt(14) c ‖Gamma_0‖ sqrt(3 ln2 / N + (d_G/N) ln(2eN/d_G) + ln(1/delta)/N).
/// Side condition d_G ln(2eN/d_G) >= ln(delta) - (5/2) ln 2, else precondition_error.
[[nodiscard]] BoundReport bound_thm3_uemc(const BoundInputs &in);

/// L_S + 2 E[R] + 2 c sqrt(2 ln(1/delta) / N), with E[R] supplied by the caller.
[[nodiscard]] BoundReport bound_thm4_martingale(const BoundInputs &in, double rademacher,
                                                RademacherSource source);

/// rho B D sqrt(R1 + R2) / sqrt(N): the analytic cap on the loss-class Rademacher complexity.
[[nodiscard]] double analytic_rademacher_cap(const BoundInputs &in);

/// L_S + 16 sqrt(2) c sqrt(2 ln2/N + ln(c~ + 2)/N + (d_G/N) ln(2eN/d_G) + ln(1/delta)/N).
/// Side condition d_G ln(2eN/d_G) >= ln(delta) - (7/4) ln 2 - (3/4) ln(c~ + 2).
[[nodiscard]] BoundReport bound_thm5_stochastic(const BoundInputs &in);

/// One CSV header line / one row per report (comma separated, LF).
void write_bound_csv_header(std::ostream &out);
void write_bound_csv_row(std::ostream &out, const BoundReport &report);

// ---------------------------------------------------------------------------------------------
// Empirical Rademacher complexity.

/// Power iteration failed to settle; carries the last iterate and its Rayleigh quotient.
class power_iteration_error : public error {
  public:
    power_iteration_error(const std::string &what, Mat last_iterate, double last_estimate)
        : error(what), last_iterate_(std::move(last_iterate)), last_estimate_(last_estimate) {}

    [[nodiscard]] const Mat &last_iterate() const noexcept { return last_iterate_; }
    [[nodiscard]] double last_estimate() const noexcept { return last_estimate_; }

  private:
    Mat last_iterate_;
    double last_estimate_;
};

struct PowerIterationResult {
    double sigma_max = 0.0;
    std::size_t iterations = 0;
    bool restarted = false;
};

/// Largest singular value of Z -> d2(A, Z) by power iteration on its normal operator
/// Z -> G(d2(A, Z)) o A, started from the normalized all-ones matrix. If the converged Rayleigh
/// quotient is below 2‖A‖² / min(m+n, mn) (which the top eigenvalue can never be), the iteration
/// is restarted once from a Gaussian matrix drawn from `rng`.
[[nodiscard]] PowerIterationResult operator_top_singular_value(const Mat &a, Rng &rng, double rel_tol = 1e-10,
                                                               std::size_t max_iter = 10000);

struct RademacherEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t rounds = 0;
};

/// (1/N) * mean over rounds of sigma_max(Z -> d2(sum_i s_i X_i, Z)), s uniform in {+1,-1}^N. This is
/// the sup of sum_i s_i w'd2(X_i, Z) over the unit balls of w and Z.
[[nodiscard]] RademacherEstimate empirical_rademacher_mdsmm(std::span<const LabeledSample> samples,
                                                            std::size_t rounds, Rng &rng);

/// (1/N) * mean over rounds of ‖sum_i s_i X_i‖.
[[nodiscard]] RademacherEstimate empirical_rademacher_linear(std::span<const LabeledSample> samples,
                                                             std::size_t rounds, Rng &rng);

/// sqrt(max_i (‖X_i o X_i‖_1 + ‖X_i o X_i‖_inf)) / sqrt(N): the cap the multi-distance estimate is
/// checked against.
[[nodiscard]] double multi_distance_rademacher_cap(std::span<const LabeledSample> samples);

}  // namespace mdsmm
