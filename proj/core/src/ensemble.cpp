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

#include "empc/ensemble.hpp"

#include <string>

#include "empc/errors.hpp"

namespace empc {

Ensemble::Ensemble(Eigen::MatrixXd data) : data_(std::move(data))
{
    if (data_.cols() < 2) {
        throw InvalidArgument("ensemble needs at least 2 members, got " +
                              std::to_string(data_.cols()));
    }
    if (!data_.allFinite()) {
        throw InvalidArgument("ensemble contains non-finite entries");
    }
}

Eigen::VectorXd mean(const Ensemble& ens)
{
    return ens.data().rowwise().mean();
}

Ensemble perturbations(const Ensemble& ens)
{
    return Ensemble(ens.data().colwise() - mean(ens));
}

Eigen::MatrixXd sample_covariance(const Ensemble& pert)
{
    const auto& p = pert.data();
    Eigen::MatrixXd c = p * p.transpose() / static_cast<double>(pert.size() - 1);
    // Symmetrize away roundoff in the product.
    return 0.5 * (c + c.transpose());
}

Eigen::MatrixXd cross_covariance(const Ensemble& a_pert, const Ensemble& b_pert)
{
    if (a_pert.size() != b_pert.size()) {
        throw DimensionError("cross_covariance: member counts differ (" +
                             std::to_string(a_pert.size()) + " vs " +
                             std::to_string(b_pert.size()) + ")");
    }
    return a_pert.data() * b_pert.data().transpose() /
           static_cast<double>(a_pert.size() - 1);
}

Eigen::VectorXd member_std(const Ensemble& ens)
{
    const Eigen::MatrixXd p = perturbations(ens).data();
    return (p.array().square().rowwise().sum() / static_cast<double>(ens.size() - 1)).sqrt();
}

Ensemble draw(const GaussianSpec& spec, Eigen::Index members)
{
    Rng rng(spec.seed);
    return draw(spec.mean, spec.std, members, rng);
}

Ensemble draw(const Eigen::VectorXd& mean, const Eigen::VectorXd& std,
              Eigen::Index members, Rng& rng)
{
    if (mean.size() != std.size()) {
        throw DimensionError("draw: mean and std lengths differ");
    }
    if ((std.array() < 0.0).any() || !std.allFinite() || !mean.allFinite()) {
        throw InvalidArgument("draw: std must be finite and nonnegative");
    }
    if (members < 2) {
        throw InvalidArgument("draw: need at least 2 members");
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd data(mean.size(), members);
    for (Eigen::Index e = 0; e < members; ++e) {
        for (Eigen::Index i = 0; i < mean.size(); ++i) {
            data(i, e) = mean(i) + std(i) * normal(rng);
        }
    }
    return Ensemble(std::move(data));
}

} // namespace empc
