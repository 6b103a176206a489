// Copyright 2026 The empc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "empc/controller.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "empc/errors.hpp"

namespace empc {

namespace {

void require_same_members(const Ensemble& a, const Ensemble& b, const char* where)
{
    if (a.size() != b.size()) {
        throw DimensionError(std::string(where) + ": member counts differ (" +
                             std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    }
}

void require_performance_dim(const Ensemble& forecast, const PerformanceSpec& spec,
                             const char* where)
{
    if (forecast.dim() != spec.target.size()) {
        throw DimensionError(std::string(where) + ": forecast has " +
                             std::to_string(forecast.dim()) + " components, target has " +
                             std::to_string(spec.target.size()));
    }
}

// Solves  sym * X = rhs ; falls back to the minimum-norm solution when sym is
// rank deficient.
GpEstimate solve_symmetric(const Eigen::MatrixXd& sym, const Eigen::MatrixXd& rhs)
{
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sym);
    cod.setThreshold(1e-12);
    GpEstimate out;
    out.pseudo_inverse = cod.rank() < sym.rows();
    out.matrix = out.pseudo_inverse ? Eigen::MatrixXd(cod.pseudoInverse() * rhs)
                                    : Eigen::MatrixXd(sym.ldlt().solve(rhs));
    return out;
}

void require_finite(const Eigen::MatrixXd& m, const char* where)
{
    if (!m.allFinite()) {
        const auto bad = (!m.array().isFinite()).count();
        throw NumericalError(std::string(where) + ": non-finite ensemble update (" +
                             std::to_string(bad) + " of " + std::to_string(m.size()) +
                             " entries, " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ")");
    }
}

} // namespace

void PerformanceSpec::validate() const
{
    if (target.size() == 0) throw InvalidArgument("performance target is empty");
    if (rho.size() != target.size()) {
        throw DimensionError("performance tolerance has " + std::to_string(rho.size()) +
                             " components, target has " + std::to_string(target.size()));
    }
    if (!((rho.array() > 0.0).all()) || !rho.allFinite()) {
        throw InvalidArgument("performance tolerances must be finite and positive");
    }
    if (!target.allFinite()) throw InvalidArgument("performance target must be finite");
}

Eigen::VectorXd PerformanceSpec::project(const Eigen::VectorXd& x) const
{
    return projection ? projection(x) : x;
}

Eigen::MatrixXd PerformanceSpec::tolerance_covariance() const
{
    return rho.array().square().matrix().asDiagonal();
}

void ControllerConfig::validate() const
{
    if (members < 2) throw InvalidArgument("ensemble size must be >= 2");
    if (horizon < 1) throw InvalidArgument("horizon must be >= 1");
    if (!(sigma0 > 0.0)) throw InvalidArgument("initial perturbation std must be positive");
    if (!(svd_trunc >= 0.0 && svd_trunc < 1.0)) throw InvalidArgument("svd_trunc must lie in [0, 1)");
    if (!(inflation >= 0.0)) throw InvalidArgument("inflation must be nonnegative");
    if (!(min_std >= 0.0)) throw InvalidArgument("min_std must be nonnegative");
    if (workers < 1) throw InvalidArgument("workers must be >= 1");
    if (selection.kind == SelectionRule::Kind::Member &&
        (selection.member < 0 || selection.member >= members)) {
        throw InvalidArgument("selected member index out of range");
    }
}

Ensemble forecast(const Eigen::VectorXd& x0, const Ensemble& controls,
                  const PerformanceSpec& spec, int steps, const ForecastModel& model,
                  int workers)
{
    if (controls.dim() != model.control_dim()) {
        throw DimensionError("forecast: control ensemble dimension does not match the model");
    }
    if ((controls.data().array() < 0.0).any()) {
        throw InvalidArgument("forecast: control members must be clamped nonnegative");
    }
    const Eigen::Index members = controls.size();
    const Eigen::Index perf_dim = spec.project(x0).size();
    Eigen::MatrixXd out(perf_dim, members);
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(members));

    const auto run_range = [&](Eigen::Index begin, Eigen::Index end) {
        for (Eigen::Index e = begin; e < end; ++e) {
            try {
                const Eigen::VectorXd z = spec.project(model.propagate(x0, controls.member(e), steps));
                if (z.size() != perf_dim) throw DimensionError("projection changed dimension");
                out.col(e) = z;
            } catch (...) {
                failures[static_cast<std::size_t>(e)] = std::current_exception();
            }
        }
    };

    const Eigen::Index n_threads = std::clamp<Eigen::Index>(workers, 1, members);
    if (n_threads == 1) {
        run_range(0, members);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        const Eigen::Index chunk = (members + n_threads - 1) / n_threads;
        for (Eigen::Index t = 0; t < n_threads; ++t) {
            const Eigen::Index begin = t * chunk;
            const Eigen::Index end = std::min(members, begin + chunk);
            if (begin < end) pool.emplace_back(run_range, begin, end);
        }
    }

    for (Eigen::Index e = 0; e < members; ++e) {
        if (const auto& f = failures[static_cast<std::size_t>(e)]) {
            try {
                std::rethrow_exception(f);
            } catch (const std::exception& ex) {
                throw PropagationError("forecast member " + std::to_string(e) + " failed: " + ex.what(),
                                       static_cast<int>(e));
            }
        }
    }
    return Ensemble(std::move(out));
}

GpEstimate forward_gp(const Ensemble& u_pert, const Ensemble& z_pert)
{
    require_same_members(u_pert, z_pert, "forward_gp");
    const Eigen::MatrixXd c_uu = sample_covariance(u_pert);
    const Eigen::MatrixXd c_uz = cross_covariance(u_pert, z_pert);
    GpEstimate g = solve_symmetric(c_uu, c_uz);   // C_uu^-1 C_uz
    g.matrix.transposeInPlace();
    return g;
}

GpEstimate backward_gp(const Ensemble& u_pert, const Ensemble& z_pert,
                       const Eigen::MatrixXd& tolerance)
{
    require_same_members(u_pert, z_pert, "backward_gp");
    if (tolerance.rows() != z_pert.dim() || tolerance.cols() != z_pert.dim()) {
        throw DimensionError("backward_gp: tolerance must be O x O");
    }
    const Eigen::MatrixXd c_zz = sample_covariance(z_pert) + tolerance;
    const Eigen::MatrixXd c_zu = cross_covariance(z_pert, u_pert);
    GpEstimate k = solve_symmetric(c_zz, c_zu);   // (C_zz + C)^-1 C_zu
    k.matrix.transposeInPlace();
    return k;
}

Eigen::MatrixXd target_ensemble(const PerformanceSpec& spec, Eigen::Index members,
                                bool perturb, Rng& rng)
{
    if (!perturb) return spec.target.replicate(1, members);
    return draw(spec.target, spec.rho, members, rng).data();
}

UpdateResult update_direct(const Ensemble& prior, const Ensemble& forecast,
                           const PerformanceSpec& spec, bool perturb_targets, Rng& rng)
{
    spec.validate();
    require_same_members(prior, forecast, "update_direct");
    require_performance_dim(forecast, spec, "update_direct");

    const Eigen::Index members = prior.size();
    const double denom = static_cast<double>(members - 1);
    const Eigen::MatrixXd u_pert = perturbations(prior).data();
    const Eigen::MatrixXd z_pert = perturbations(forecast).data();
    const Eigen::MatrixXd innovation =
        target_ensemble(spec, members, perturb_targets, rng) - forecast.data();

    const Eigen::MatrixXd s = z_pert * z_pert.transpose() / denom + spec.tolerance_covariance();
    const Eigen::MatrixXd x = z_pert.transpose() / denom * s.ldlt().solve(innovation);
    require_finite(x, "update_direct");

    Eigen::MatrixXd posterior = prior.data() + u_pert * x;
    require_finite(posterior, "update_direct");

    UpdateResult out{Ensemble(std::move(posterior)),
                     Eigen::MatrixXd::Identity(members, members) + x,
                     u_pert.isZero(0.0) || z_pert.isZero(0.0)};
    return out;
}

UpdateResult update_sqrt(const Ensemble& prior, const Ensemble& forecast,
                         const PerformanceSpec& spec, bool perturb_targets, double svd_trunc,
                         Rng& rng)
{
    spec.validate();
    require_same_members(prior, forecast, "update_sqrt");
    require_performance_dim(forecast, spec, "update_sqrt");
    if (!(svd_trunc >= 0.0 && svd_trunc < 1.0)) {
        throw InvalidArgument("update_sqrt: svd_trunc must lie in [0, 1)");
    }

    const Eigen::Index members = prior.size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(members - 1));
    const Eigen::VectorXd whiten = spec.rho.cwiseInverse();
    const Eigen::MatrixXd u_pert = perturbations(prior).data();
    const Eigen::MatrixXd z_pert = perturbations(forecast).data();

    // Rows divided by rho_i so the tolerance becomes the identity.
    const Eigen::MatrixXd s = whiten.asDiagonal() * z_pert * scale;
    const Eigen::MatrixXd delta =
        whiten.asDiagonal() * (target_ensemble(spec, members, perturb_targets, rng) - forecast.data());

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(s, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw NumericalError("update_sqrt: SVD failed");
    const Eigen::VectorXd& sigma = svd.singularValues();

    const double cutoff = sigma.size() > 0 ? svd_trunc * sigma(0) : 0.0;
    Eigen::Index kept = 0;
    while (kept < sigma.size() && sigma(kept) > cutoff && sigma(kept) > 0.0) ++kept;

    const Eigen::VectorXd gain =
        sigma.head(kept).array() / (sigma.head(kept).array().square() + 1.0);
    const Eigen::MatrixXd x = scale * svd.matrixV().leftCols(kept) * gain.asDiagonal() *
                              (svd.matrixU().leftCols(kept).transpose() * delta);
    require_finite(x, "update_sqrt");

    // prior * (I + x) == prior + u_pert * x because the retained right singular
    // vectors are orthogonal to the ones vector; the second form avoids the
    // roundoff of that cancellation.
    Eigen::MatrixXd posterior = prior.data() + u_pert * x;
    require_finite(posterior, "update_sqrt");

    UpdateResult out{Ensemble(std::move(posterior)),
                     Eigen::MatrixXd::Identity(members, members) + x,
                     u_pert.isZero(0.0) || kept == 0};
    return out;
}

Eigen::VectorXd select(const Ensemble& posterior, const SelectionRule& rule)
{
    const Eigen::MatrixXd& u = posterior.data();
    Eigen::VectorXd chosen(u.rows());
    switch (rule.kind) {
    case SelectionRule::Kind::Mean:
        chosen = u.rowwise().mean();
        break;
    case SelectionRule::Kind::Member:
        if (rule.member < 0 || rule.member >= u.cols()) {
            throw InvalidArgument("select: member index " + std::to_string(rule.member) +
                                  " out of range");
        }
        chosen = u.col(rule.member);
        break;
    case SelectionRule::Kind::Median: {
        const auto n = static_cast<std::size_t>(u.cols());
        std::vector<double> row(n);
        for (Eigen::Index i = 0; i < u.rows(); ++i) {
            for (std::size_t e = 0; e < n; ++e) row[e] = u(i, static_cast<Eigen::Index>(e));
            std::sort(row.begin(), row.end());
            chosen(i) = n % 2 == 1 ? row[n / 2] : 0.5 * (row[n / 2 - 1] + row[n / 2]);
        }
        break;
    }
    }
    return chosen.cwiseMax(0.0);
}

Ensemble resample(const Eigen::VectorXd& applied, const Eigen::VectorXd& posterior_std,
                  const ControllerConfig& cfg, Rng& rng)
{
    if (applied.size() != posterior_std.size()) {
        throw DimensionError("resample: applied control and std lengths differ");
    }
    if ((posterior_std.array() < 0.0).any()) {
        throw InvalidArgument("resample: posterior std must be nonnegative");
    }
    const Eigen::VectorXd std =
        (posterior_std * std::sqrt(cfg.inflation)).cwiseMax(cfg.min_std);
    const Ensemble fresh = draw(applied, std, cfg.members, rng);
    return Ensemble(fresh.data().cwiseMax(0.0));
}

CycleResult control_cycle(const Eigen::VectorXd& x_plant, const Ensemble& prior,
                          const PerformanceSpec& spec, const ControllerConfig& cfg,
                          const ForecastModel& model, Rng& rng)
{
    cfg.validate();
    spec.validate();
    if (prior.size() != cfg.members) {
        throw DimensionError("control_cycle: prior has " + std::to_string(prior.size()) +
                             " members, config expects " + std::to_string(cfg.members));
    }

    const Ensemble clamped(prior.data().cwiseMax(0.0));
    const Ensemble z_hat = forecast(x_plant, clamped, spec, cfg.horizon, model, cfg.workers);

    const UpdateResult update =
        cfg.form == UpdateForm::SquareRoot
            ? update_sqrt(clamped, z_hat, spec, cfg.perturb_targets, cfg.svd_trunc, rng)
            : update_direct(clamped, z_hat, spec, cfg.perturb_targets, rng);

    CycleDiagnostics diag;
    diag.applied = select(update.posterior, cfg.selection);
    diag.posterior_mean = mean(update.posterior);
    diag.posterior_std = member_std(update.posterior);
    diag.total_std = std::sqrt(diag.posterior_std.squaredNorm());
    diag.terminal_mae = (spec.target - mean(z_hat)).cwiseAbs().mean();
    diag.collapsed = update.collapsed;

    Ensemble next = resample(diag.applied, diag.posterior_std, cfg, rng);
    Eigen::VectorXd applied = diag.applied;
    return CycleResult{std::move(applied), std::move(next), std::move(diag)};
}

Eigen::MatrixXd trajectory_message(std::span<const MessageStep> steps)
{
    if (steps.empty()) throw InvalidArgument("trajectory_message: no steps given");
    const Eigen::Index members = steps.front().message.rows();
    Eigen::MatrixXd product = Eigen::MatrixXd::Identity(members, members);
    for (std::size_t n = 0; n < steps.size(); ++n) {
        const auto& m = steps[n].message;
        if (m.rows() != members || m.cols() != members) {
            throw DimensionError("trajectory_message: step " + std::to_string(n) +
                                 " is not " + std::to_string(members) + " x " +
                                 std::to_string(members));
        }
        if (steps[n].active) product = product * m;
    }
    return product;
}

} // namespace empc
