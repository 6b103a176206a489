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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "empc/ensemble.hpp"
#include "empc/errors.hpp"

namespace {

using empc::Ensemble;

Eigen::MatrixXd fixture()
{
    Eigen::MatrixXd m(3, 5);
    m << 1.0, 2.0, 4.0, -1.0, 0.5,
         0.3, 0.1, -0.2, 0.9, 1.7,
         10.0, 11.0, 9.5, 10.5, 12.0;
    return m;
}

// Plain loops; no Eigen reductions.
double brute_cov(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, int i, int j)
{
    const int E = static_cast<int>(a.cols());
    double ma = 0.0, mb = 0.0;
    for (int e = 0; e < E; ++e) {
        ma += a(i, e);
        mb += b(j, e);
    }
    ma /= E;
    mb /= E;
    double s = 0.0;
    for (int e = 0; e < E; ++e) s += (a(i, e) - ma) * (b(j, e) - mb);
    return s / (E - 1);
}

} // namespace

TEST(Ensemble, RejectsSingleMember)
{
    EXPECT_THROW(Ensemble(Eigen::MatrixXd::Zero(3, 1)), empc::InvalidArgument);
    EXPECT_THROW(Ensemble(Eigen::MatrixXd::Zero(3, 0)), empc::InvalidArgument);
}

TEST(Ensemble, RejectsNonFinite)
{
    Eigen::MatrixXd m = fixture();
    m(1, 2) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(Ensemble{m}, empc::InvalidArgument);
    m(1, 2) = std::numeric_limits<double>::infinity();
    EXPECT_THROW(Ensemble{m}, empc::InvalidArgument);
}

TEST(Ensemble, ShapeAccessors)
{
    const Ensemble ens(fixture());
    EXPECT_EQ(ens.dim(), 3);
    EXPECT_EQ(ens.size(), 5);
    EXPECT_DOUBLE_EQ(ens.member(2)(0), 4.0);
}

TEST(Ensemble, MeanMatchesLoop)
{
    const Eigen::MatrixXd m = fixture();
    const Eigen::VectorXd mu = empc::mean(Ensemble(m));
    for (int i = 0; i < 3; ++i) {
        double s = 0.0;
        for (int e = 0; e < 5; ++e) s += m(i, e);
        EXPECT_NEAR(mu(i), s / 5.0, 1e-14);
    }
}

TEST(Ensemble, PerturbationRowsSumToZero)
{
    const Ensemble p = empc::perturbations(Ensemble(fixture()));
    for (Eigen::Index i = 0; i < p.dim(); ++i) EXPECT_NEAR(p.data().row(i).sum(), 0.0, 1e-13);
}

TEST(Ensemble, SampleCovarianceMatchesLoops)
{
    const Eigen::MatrixXd m = fixture();
    const Eigen::MatrixXd c = empc::sample_covariance(empc::perturbations(Ensemble(m)));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_NEAR(c(i, j), brute_cov(m, m, i, j), 1e-13);
    EXPECT_EQ((c - c.transpose()).norm(), 0.0);
}

TEST(Ensemble, CrossCovarianceMatchesLoops)
{
    const Eigen::MatrixXd a = fixture();
    Eigen::MatrixXd b(2, 5);
    b << 0.0, 1.0, 0.0, 3.0, -2.0,
         5.0, 5.5, 4.0, 4.5, 6.0;
    const Eigen::MatrixXd c = empc::cross_covariance(empc::perturbations(Ensemble(a)),
                                                     empc::perturbations(Ensemble(b)));
    ASSERT_EQ(c.rows(), 3);
    ASSERT_EQ(c.cols(), 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) EXPECT_NEAR(c(i, j), brute_cov(a, b, i, j), 1e-13);
}

TEST(Ensemble, CrossCovarianceMemberMismatch)
{
    const Ensemble a(Eigen::MatrixXd::Random(2, 4));
    const Ensemble b(Eigen::MatrixXd::Random(2, 5));
    EXPECT_THROW(empc::cross_covariance(a, b), empc::DimensionError);
}

TEST(Ensemble, MemberStdIsSqrtOfDiagonal)
{
    const Ensemble ens(fixture());
    const Eigen::VectorXd s = empc::member_std(ens);
    const Eigen::MatrixXd c = empc::sample_covariance(empc::perturbations(ens));
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(s(i), std::sqrt(c(i, i)), 1e-14);
}

TEST(Draw, SameSeedSameEnsemble)
{
    const empc::GaussianSpec spec{Eigen::Vector2d(1.0, -2.0), Eigen::Vector2d(0.5, 0.1), 42};
    EXPECT_EQ(empc::draw(spec, 16).data(), empc::draw(spec, 16).data());
    auto other = spec;
    other.seed = 43;
    EXPECT_NE(empc::draw(spec, 16).data(), empc::draw(other, 16).data());
}

TEST(Draw, ZeroStdGivesConstantMembers)
{
    const empc::GaussianSpec spec{Eigen::Vector3d(1, 2, 3), Eigen::Vector3d::Zero(), 1};
    const Ensemble ens = empc::draw(spec, 4);
    for (int e = 0; e < 4; ++e) EXPECT_EQ(ens.member(e), spec.mean);
}

TEST(Draw, RejectsNegativeStd)
{
    const empc::GaussianSpec spec{Eigen::Vector2d(0, 0), Eigen::Vector2d(1.0, -1.0), 1};
    EXPECT_THROW(empc::draw(spec, 4), empc::InvalidArgument);
}

// Sample moments of 40000 draws sit within a few standard errors.
TEST(Draw, MomentsProperty)
{
    const Eigen::Vector3d mu(4.905, -1.0, 0.0);
    const Eigen::Vector3d sd(0.01, 2.0, 1.0);
    const Eigen::Index E = 40000;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const Ensemble ens = empc::draw(empc::GaussianSpec{mu, sd, seed}, E);
        const Eigen::VectorXd m = empc::mean(ens);
        const Eigen::VectorXd s = empc::member_std(ens);
        for (int i = 0; i < 3; ++i) {
            EXPECT_LT(std::abs(m(i) - mu(i)), 5.0 * sd(i) / std::sqrt(double(E)));
            EXPECT_LT(std::abs(s(i) - sd(i)), 5.0 * sd(i) / std::sqrt(2.0 * E));
        }
    }
}
