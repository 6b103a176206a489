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

#pragma once

#include <functional>
#include <span>

#include <Eigen/Dense>

#include "empc/ensemble.hpp"
#include "empc/forecast_model.hpp"

namespace empc {

/// Terminal performance demand: target z_N with tolerance C_zz = diag(rho^2).
struct PerformanceSpec {
    Eigen::VectorXd target;
    Eigen::VectorXd rho;
    /// Maps a model state to performance space; empty means identity.
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> projection;

    void validate() const;
    Eigen::VectorXd project(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd tolerance_covariance() const;
};

struct SelectionRule {
    enum class Kind { Median, Mean, Member };
    Kind kind = Kind::Median;
    Eigen::Index member = 0;

    static SelectionRule median() { return {}; }
    static SelectionRule mean() { return {Kind::Mean, 0}; }
    static SelectionRule of_member(Eigen::Index e) { return {Kind::Member, e}; }
};

enum class UpdateForm { SquareRoot, Direct };

struct ControllerConfig {
    Eigen::Index members = 100;
    int horizon = 4;
    double sigma0 = 0.01;
    SelectionRule selection;
    bool perturb_targets = false;
    double svd_trunc = 0.0;
    double inflation = 1.0;
    double min_std = 1e-4;
    UpdateForm form = UpdateForm::SquareRoot;
    int workers = 1;

    void validate() const;
};

/// N-step forecast of every control member from the same initial state,
/// projected to performance space. Column order follows \p controls.
/// Members are spread over \p workers threads; the result does not depend on
/// the worker count. A failing member is reported as PropagationError with
/// its index (the lowest failing index when several fail).
Ensemble forecast(const Eigen::VectorXd& x0, const Ensemble& controls,
                  const PerformanceSpec& spec, int steps, const ForecastModel& model,
                  int workers = 1);

struct GpEstimate {
    Eigen::MatrixXd matrix;
    bool pseudo_inverse = false;  // rank-deficient inverse replaced by pinv
};

/// Forward process C_zu C_uu^-1 (O x D).
GpEstimate forward_gp(const Ensemble& u_pert, const Ensemble& z_pert);

/// Backward gain C_uz (C_zz_ens + tolerance)^-1 (D x O). With a zero
/// tolerance this is the plain backward process C_uz C_zz^-1.
GpEstimate backward_gp(const Ensemble& u_pert, const Ensemble& z_pert,
                       const Eigen::MatrixXd& tolerance);

struct UpdateResult {
    Ensemble posterior;
    Eigen::MatrixXd message;   // E x E transform, posterior = prior * message
    bool collapsed = false;    // prior or forecast spread was zero; gain vanished
};

/// Per-member performance targets: every column equals spec.target, or
/// target + N(0, diag(rho^2)) when \p perturb is set.
Eigen::MatrixXd target_ensemble(const PerformanceSpec& spec, Eigen::Index members,
                                bool perturb, Rng& rng);

/// U+ = U + U~ Z~^T/(E-1) (Z~ Z~^T/(E-1) + C_zz)^-1 (Z - Zhat).
UpdateResult update_direct(const Ensemble& prior, const Ensemble& forecast,
                           const PerformanceSpec& spec, bool perturb_targets, Rng& rng);

/// Same update through the SVD of the whitened forecast perturbations.
/// Singular values below svd_trunc * sigma_max are dropped.
UpdateResult update_sqrt(const Ensemble& prior, const Ensemble& forecast,
                         const PerformanceSpec& spec, bool perturb_targets, double svd_trunc,
                         Rng& rng);

/// Control applied to the plant, clamped at zero.
Eigen::VectorXd select(const Ensemble& posterior, const SelectionRule& rule);

/// Next-cycle prior centred at the applied control with
/// std = max(posterior_std * sqrt(inflation), min_std), clamped at zero.
Ensemble resample(const Eigen::VectorXd& applied, const Eigen::VectorXd& posterior_std,
                  const ControllerConfig& cfg, Rng& rng);

struct CycleDiagnostics {
    Eigen::VectorXd posterior_mean;
    Eigen::VectorXd posterior_std;
    double total_std = 0.0;      // sqrt of summed input variances
    double terminal_mae = 0.0;   // |target - forecast mean|, averaged
    Eigen::VectorXd applied;
    bool collapsed = false;
};

struct CycleResult {
    Eigen::VectorXd applied;
    Ensemble next_prior;
    CycleDiagnostics diagnostics;
};

/// forecast -> update -> select -> resample.
CycleResult control_cycle(const Eigen::VectorXd& x_plant, const Ensemble& prior,
                          const PerformanceSpec& spec, const ControllerConfig& cfg,
                          const ForecastModel& model, Rng& rng);

struct MessageStep {
    Eigen::MatrixXd message;
    bool active = false;  // performance specified at this step
};

/// Ordered product over steps, identity where a step is inactive.
Eigen::MatrixXd trajectory_message(std::span<const MessageStep> steps);

} // namespace empc
