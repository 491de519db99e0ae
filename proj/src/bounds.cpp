#include "mdsmm/bounds.hpp"

#include "textio.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

namespace mdsmm {

namespace {

void check_common(const BoundInputs &in) {
    if (!(in.delta > 0.0 && in.delta < 1.0)) {
        throw input_error("bound inputs: delta must lie in (0, 1)");
    }
    if (in.n_samples == 0) {
        throw input_error("bound inputs: N must be positive");
    }
    if (!(in.lipschitz >= 0.0) || !(in.b_cap >= 0.0) || !(in.d_cap >= 0.0) || !(in.b_prime >= 0.0)) {
        throw input_error("bound inputs: rho, B, D and B' must be non-negative");
    }
    if (in.cap_mode == LossCapMode::explicit_value && !(in.loss_cap >= 0.0)) {
        throw input_error("bound inputs: loss cap must be non-negative");
    }
    if (!(in.radii.r >= 0.0) || !(in.radii.r1 >= 0.0) || !(in.radii.r2 >= 0.0)) {
        throw input_error("bound inputs: radii must be non-negative");
    }
}

// B D sqrt(R1 + R2): the largest |w'd2(X, Z)| over the class.
double multi_distance_reach(const BoundInputs &in) {
    return in.b_cap * in.d_cap * std::sqrt(in.radii.r1 + in.radii.r2);
}

double linear_reach(const BoundInputs &in) { return in.b_prime * in.radii.r; }

double loss_cap(const BoundInputs &in, double reach) {
    return in.cap_mode == LossCapMode::hinge ? 1.0 + reach : in.loss_cap;
}

double vc_term(double d, double n) { return (d / n) * std::log(2.0 * std::numbers::e * n / d); }

void check_vc(const BoundInputs &in) {
    if (!in.vc_dim || !(*in.vc_dim >= 1.0)) {
        throw input_error("bound inputs: VC dimension d_G >= 1 is required");
    }
}

}  // namespace

DataRadii data_radii(std::span<const LabeledSample> samples) {
    if (samples.empty()) {
        throw input_error("data_radii: sample set is empty");
    }
    DataRadii out;
    for (const auto &s : samples) {
        const Mat sq = hadamard(s.x, s.x);
        out.r = std::max(out.r, frobenius_norm(s.x));
        out.r1 = std::max(out.r1, induced_norm_1(sq));
        out.r2 = std::max(out.r2, induced_norm_inf(sq));
    }
    return out;
}

std::string to_string(TheoremId id) {
    switch (id) {
        case TheoremId::thm1: return "thm1";
        case TheoremId::svm_ref: return "svm-ref";
        case TheoremId::thm2: return "thm2";
        case TheoremId::thm3: return "thm3";
        case TheoremId::thm4: return "thm4";
        case TheoremId::thm5: return "thm5";
    }
    return "unknown";
}

TheoremId parse_theorem_id(const std::string &text) {
    for (auto id : {TheoremId::thm1, TheoremId::svm_ref, TheoremId::thm2, TheoremId::thm3, TheoremId::thm4,
                    TheoremId::thm5}) {
        if (to_string(id) == text) {
            return id;
        }
    }
    throw input_error("unknown theorem id '" + text + "'");
}

BoundReport bound_thm1(const BoundInputs &in) {
    check_common(in);
    const double n = static_cast<double>(in.n_samples);
    const double reach = multi_distance_reach(in);
    BoundReport r;
    r.theorem = TheoremId::thm1;
    r.inputs = in;
    r.loss_cap_used = loss_cap(in, reach);
    r.complexity_term = 2.0 * in.lipschitz * reach / std::sqrt(n);
    r.deviation_term = r.loss_cap_used * std::sqrt(2.0 * std::log(2.0 / in.delta) / n);
    r.rhs = in.empirical_loss + r.complexity_term + r.deviation_term;
    return r;
}

BoundReport bound_svm_ref(const BoundInputs &in) {
    check_common(in);
    const double n = static_cast<double>(in.n_samples);
    const double reach = linear_reach(in);
    BoundReport r;
    r.theorem = TheoremId::svm_ref;
    r.inputs = in;
    r.loss_cap_used = loss_cap(in, reach);
    r.complexity_term = 2.0 * in.lipschitz * reach / std::sqrt(n);
    r.deviation_term = r.loss_cap_used * std::sqrt(2.0 * std::log(2.0 / in.delta) / n);
    r.rhs = in.empirical_loss + r.complexity_term + r.deviation_term;
    return r;
}

CorollaryComparison compare_corollary(const BoundInputs &in) {
    CorollaryComparison out;
    out.mdsmm_smaller = multi_distance_reach(in) < linear_reach(in);
    out.mdsmm = bound_thm1(in);
    out.svm = bound_svm_ref(in);
    return out;
}

CorollaryComparison compare_corollary(const BoundInputs &in, const DataRadii &radii) {
    BoundInputs copy = in;
    copy.radii = radii;
    return compare_corollary(copy);
}

BoundReport bound_thm2_mixing(const BoundInputs &in) {
    check_common(in);
    if (!in.mu || !in.block_size || !in.beta_a) {
        throw input_error("thm2: mu, block size a and beta(a) are required");
    }
    const std::size_t mu = *in.mu;
    const std::size_t a = *in.block_size;
    const double beta = *in.beta_a;
    if (mu == 0 || a == 0) {
        throw input_error("thm2: mu and a must be positive");
    }
    if (2 * mu * a != in.n_samples) {
        throw input_error("thm2: 2 * mu * a must equal N");
    }
    if (!(beta >= 0.0)) {
        throw input_error("thm2: beta(a) must be non-negative");
    }
    const double mixing = 2.0 * static_cast<double>(mu - 1) * beta;
    if (mixing >= in.delta) {
        throw infeasible_bound_error("thm2: 2 (mu - 1) beta(a) = " + textio::format_real(mixing) +
                                     " >= delta; the mixing coefficient is too large for this confidence");
    }
    const double delta_prime = in.delta - mixing;
    const double m = static_cast<double>(mu);
    const double reach = multi_distance_reach(in);
    BoundReport r;
    r.theorem = TheoremId::thm2;
    r.inputs = in;
    r.delta_prime = delta_prime;
    r.loss_cap_used = loss_cap(in, reach);
    r.complexity_term = 2.0 * in.lipschitz * reach / std::sqrt(m);
    r.deviation_term = r.loss_cap_used * std::sqrt(std::log(2.0 / delta_prime) / (2.0 * m));
    r.rhs = in.empirical_loss + r.complexity_term + r.deviation_term;
    return r;
}

double doeblin_gamma0(double beta1, double t) {
    if (!(beta1 >= 0.0 && beta1 < 1.0)) {
        throw input_error("Doeblin constant: beta1 must lie in [0, 1)");
    }
    if (!(t >= 1.0)) {
        throw input_error("Doeblin constant: t must be at least 1");
    }
    return std::numbers::sqrt2 / (1.0 - std::pow(beta1, 1.0 / (2.0 * t)));
}

BoundReport bound_thm3_uemc(const BoundInputs &in) {
    check_common(in);
    if (!in.beta1 || !in.doeblin_t) {
        throw input_error("thm3: beta1 and t are required");
    }
    if (!(*in.beta1 > 0.0 && *in.beta1 < 1.0)) {
        throw input_error("thm3: beta1 must lie in (0, 1)");
    }
    check_vc(in);
    const double n = static_cast<double>(in.n_samples);
    const double d = *in.vc_dim;
    const double growth = d * std::log(2.0 * std::numbers::e * n / d);
    if (!(growth >= std::log(in.delta) - 2.5 * std::numbers::ln2)) {
        throw precondition_error("thm3: d_G ln(2eN/d_G) >= ln(delta) - (5/2) ln 2 does not hold");
    }
    BoundReport r;
    r.theorem = TheoremId::thm3;
    r.inputs = in;
    r.gamma0 = doeblin_gamma0(*in.beta1, *in.doeblin_t);
    r.loss_cap_used = loss_cap(in, multi_distance_reach(in));
    r.deviation_term = 8.0 * std::sqrt(14.0) * r.loss_cap_used * *r.gamma0 *
                       std::sqrt(3.0 * std::numbers::ln2 / n + vc_term(d, n) + std::log(1.0 / in.delta) / n);
    r.rhs = in.empirical_loss + r.deviation_term;
    return r;
}

double analytic_rademacher_cap(const BoundInputs &in) {
    check_common(in);
    return in.lipschitz * multi_distance_reach(in) / std::sqrt(static_cast<double>(in.n_samples));
}

BoundReport bound_thm4_martingale(const BoundInputs &in, double rademacher, RademacherSource source) {
    check_common(in);
    if (!(rademacher >= 0.0)) {
        throw input_error("thm4: Rademacher term must be non-negative");
    }
    const double n = static_cast<double>(in.n_samples);
    BoundReport r;
    r.theorem = TheoremId::thm4;
    r.inputs = in;
    r.rademacher = rademacher;
    r.rademacher_source = source;
    r.loss_cap_used = loss_cap(in, multi_distance_reach(in));
    r.complexity_term = 2.0 * rademacher;
    r.deviation_term = 2.0 * r.loss_cap_used * std::sqrt(2.0 * std::log(1.0 / in.delta) / n);
    r.rhs = in.empirical_loss + r.complexity_term + r.deviation_term;
    return r;
}

BoundReport bound_thm5_stochastic(const BoundInputs &in) {
    check_common(in);
    if (!in.c_tilde || !(*in.c_tilde >= 0.0)) {
        throw input_error("thm5: c~ >= 0 is required");
    }
    check_vc(in);
    const double n = static_cast<double>(in.n_samples);
    const double d = *in.vc_dim;
    const double ln_ct = std::log(*in.c_tilde + 2.0);
    const double growth = d * std::log(2.0 * std::numbers::e * n / d);
    if (!(growth >= std::log(in.delta) - 1.75 * std::numbers::ln2 - 0.75 * ln_ct)) {
        throw precondition_error(
            "thm5: d_G ln(2eN/d_G) >= ln(delta) - (7/4) ln 2 - (3/4) ln(c~ + 2) does not hold");
    }
    BoundReport r;
    r.theorem = TheoremId::thm5;
    r.inputs = in;
    r.loss_cap_used = loss_cap(in, multi_distance_reach(in));
    r.deviation_term = 16.0 * std::numbers::sqrt2 * r.loss_cap_used *
                       std::sqrt(2.0 * std::numbers::ln2 / n + ln_ct / n + vc_term(d, n) + std::log(1.0 / in.delta) / n);
    r.rhs = in.empirical_loss + r.deviation_term;
    return r;
}

namespace {

template <class T>
std::string opt(const std::optional<T> &v) {
    if (!v) {
        return "";
    }
    if constexpr (std::is_floating_point_v<T>) {
        return textio::format_real(*v);
    } else {
        return std::to_string(*v);
    }
}

}  // namespace

void write_bound_csv_header(std::ostream &out) {
    out << "theorem,empirical_loss,lipschitz,B,D,B_prime,loss_cap_mode,loss_cap,delta,N,R,R1,R2,mu,a,beta_a,"
           "beta1,t,d_G,c_tilde,rademacher,rademacher_source,complexity_term,deviation_term,delta_prime,gamma0,"
           "rhs,valid\n";
}

void write_bound_csv_row(std::ostream &out, const BoundReport &r) {
    using textio::format_real;
    const BoundInputs &in = r.inputs;
    std::string source;
    if (r.rademacher_source) {
        source = *r.rademacher_source == RademacherSource::monte_carlo ? "monte-carlo" : "analytic-cap";
    }
    out << to_string(r.theorem) << ',' << format_real(in.empirical_loss) << ',' << format_real(in.lipschitz) << ','
        << format_real(in.b_cap) << ',' << format_real(in.d_cap) << ',' << format_real(in.b_prime) << ','
        << (in.cap_mode == LossCapMode::hinge ? "hinge" : "explicit") << ',' << format_real(r.loss_cap_used) << ','
        << format_real(in.delta) << ',' << in.n_samples << ',' << format_real(in.radii.r) << ','
        << format_real(in.radii.r1) << ',' << format_real(in.radii.r2) << ',' << opt(in.mu) << ','
        << opt(in.block_size) << ',' << opt(in.beta_a) << ',' << opt(in.beta1) << ',' << opt(in.doeblin_t) << ','
        << opt(in.vc_dim) << ',' << opt(in.c_tilde) << ',' << opt(r.rademacher) << ',' << source << ','
        << format_real(r.complexity_term) << ',' << format_real(r.deviation_term) << ',' << opt(r.delta_prime)
        << ',' << opt(r.gamma0) << ',' << format_real(r.rhs) << ',' << (r.preconditions_hold ? 1 : 0) << '\n';
}

// ---------------------------------------------------------------------------------------------

namespace {

struct PowerRun {
    double rayleigh = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    Mat iterate;
};

PowerRun power_run(const Mat &a, Mat z, double rel_tol, std::size_t max_iter) {
    z = (1.0 / frobenius_norm(z)) * z;
    PowerRun run{0.0, 0, false, z};
    double previous = -1.0;
    for (std::size_t k = 0; k < max_iter; ++k) {
        const Vec u = stacked_operator_apply(a, z);
        const double rq = dot(u, u);
        run.rayleigh = rq;
        run.iterations = k + 1;
        run.iterate = z;
        if (std::abs(rq - previous) <= rel_tol * rq) {
            run.converged = true;
            return run;
        }
        previous = rq;
        const Mat next = stacked_operator_adjoint(a, u);
        const double len = frobenius_norm(next);
        if (len == 0.0) {
            // z lies in the null space
            run.converged = true;
            return run;
        }
        z = (1.0 / len) * next;
    }
    return run;
}

}  // namespace

PowerIterationResult operator_top_singular_value(const Mat &a, Rng &rng, double rel_tol, std::size_t max_iter) {
    const double a_sq = inner_product(a, a);
    if (a_sq == 0.0) {
        return {0.0, 0, false};
    }
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const double floor = 2.0 * a_sq / static_cast<double>(std::min(m + n, m * n));

    PowerRun run = power_run(a, Mat::ones(m, n), rel_tol, max_iter);
    if (!run.converged) {
        throw power_iteration_error("power iteration did not converge within " + std::to_string(max_iter) +
                                        " iterations",
                                    run.iterate, run.rayleigh);
    }
    PowerIterationResult out{std::sqrt(run.rayleigh), run.iterations, false};
    if (run.rayleigh < floor * (1.0 - 1e-9)) {
        PowerRun retry = power_run(a, gaussian_matrix(rng, m, n), rel_tol, max_iter);
        if (!retry.converged) {
            throw power_iteration_error("power iteration restart did not converge within " +
                                            std::to_string(max_iter) + " iterations",
                                        retry.iterate, retry.rayleigh);
        }
        out.restarted = true;
        out.iterations += retry.iterations;
        out.sigma_max = std::sqrt(std::max(run.rayleigh, retry.rayleigh));
    }
    return out;
}

namespace {

Mat signed_sum(std::span<const LabeledSample> samples, Rng &rng) {
    const std::size_t m = samples.front().x.rows();
    const std::size_t n = samples.front().x.cols();
    std::vector<double> acc(m * n, 0.0);
    for (const auto &s : samples) {
        const double sign = rng.sign();
        auto x = s.x.data();
        for (std::size_t t = 0; t < acc.size(); ++t) {
            acc[t] += sign * x[t];
        }
    }
    return Mat(m, n, std::move(acc));
}

template <class PerRound>
RademacherEstimate monte_carlo(std::span<const LabeledSample> samples, std::size_t rounds, Rng &rng,
                               PerRound per_round) {
    if (rounds == 0) {
        throw input_error("Rademacher estimate: at least one round is required");
    }
    common_shape(samples);
    const double n = static_cast<double>(samples.size());
    std::vector<double> values;
    values.reserve(rounds);
    for (std::size_t k = 0; k < rounds; ++k) {
        Rng round_rng = rng.split();
        const Mat a = signed_sum(samples, round_rng);
        values.push_back(per_round(a, round_rng) / n);
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(rounds);
    double se = 0.0;
    if (rounds > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - mean) * (v - mean);
        }
        se = std::sqrt(ss / static_cast<double>(rounds - 1)) / std::sqrt(static_cast<double>(rounds));
    }
    return {mean, se, rounds};
}

}  // namespace

RademacherEstimate empirical_rademacher_mdsmm(std::span<const LabeledSample> samples, std::size_t rounds, Rng &rng) {
    return monte_carlo(samples, rounds, rng,
                       [](const Mat &a, Rng &r) { return operator_top_singular_value(a, r).sigma_max; });
}

RademacherEstimate empirical_rademacher_linear(std::span<const LabeledSample> samples, std::size_t rounds, Rng &rng) {
    return monte_carlo(samples, rounds, rng, [](const Mat &a, Rng &) { return frobenius_norm(a); });
}

double multi_distance_rademacher_cap(std::span<const LabeledSample> samples) {
    if (samples.empty()) {
        throw input_error("Rademacher cap: sample set is empty");
    }
    double worst = 0.0;
    for (const auto &s : samples) {
        worst = std::max(worst, hadamard_radius(s.x));
    }
    return std::sqrt(worst) / std::sqrt(static_cast<double>(samples.size()));
}

}  // namespace mdsmm
