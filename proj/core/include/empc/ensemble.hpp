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

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace empc {

using Rng = std::mt19937_64;

/// D x E sample collection, one member per column.
///
/// Every ensemble in the controller (prior controls, forecast performance
/// variables, their perturbations) uses this layout so covariance products
/// read as A * B^T / (E - 1).
class Ensemble {
public:
    /// Throws InvalidArgument if E < 2 or any entry is non-finite.
    explicit Ensemble(Eigen::MatrixXd data);

    Eigen::Index dim() const noexcept { return data_.rows(); }
    Eigen::Index size() const noexcept { return data_.cols(); }

    const Eigen::MatrixXd& data() const noexcept { return data_; }
    Eigen::VectorXd member(Eigen::Index e) const { return data_.col(e); }

private:
    Eigen::MatrixXd data_;
};

Eigen::VectorXd mean(const Ensemble& ens);

/// Members minus the ensemble mean; every row sums to zero.
Ensemble perturbations(const Ensemble& ens);

/// Unbiased estimate  P P^T / (E - 1)  of a perturbation ensemble.
Eigen::MatrixXd sample_covariance(const Ensemble& pert);

/// A B^T / (E - 1). Throws DimensionError if member counts differ.
Eigen::MatrixXd cross_covariance(const Ensemble& a_pert, const Ensemble& b_pert);

/// Per-component unbiased standard deviation.
Eigen::VectorXd member_std(const Ensemble& ens);

/// Diagonal Gaussian sampling distribution.
struct GaussianSpec {
    Eigen::VectorXd mean;
    Eigen::VectorXd std;
    std::uint64_t seed = 0;
};

/// E i.i.d. draws from N(mean, diag(std^2)) using a generator seeded from spec.seed.
Ensemble draw(const GaussianSpec& spec, Eigen::Index members);

/// Same as above but advances a caller-owned generator. Members are drawn in
/// column order, components in row order.
Ensemble draw(const Eigen::VectorXd& mean, const Eigen::VectorXd& std,
              Eigen::Index members, Rng& rng);

} // namespace empc
