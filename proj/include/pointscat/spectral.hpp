// SPDX-License-Identifier: Apache-2.0
//
// pointscat: identification of point-like acoustic objects from multi-frequency sparse data
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef POINTSCAT_SPECTRAL_HPP
#define POINTSCAT_SPECTRAL_HPP

#include "pointscat/forward.hpp"
#include "pointscat/sampling.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace pointscat::spectral
{
    // Far-field samples u(xhat, j k_min), j = 1..J, along one direction
    class HankelData
    {
    public:
        // phase_factor is 1 for source far fields and 2 for backscatter data.
        // Throws insufficient_frequencies unless J > 2 m_bound, validation unless m_bound >= 1.
        HankelData(Vec direction, double k_min, std::vector<Complex> values, int m_bound, double phase_factor = 1.0);

        // Row `row` of an equidistant far-field or backscatter measurement set
        static HankelData from_measurements(const MeasurementSet &m, std::size_t row, int m_bound);

        const Vec &direction() const noexcept { return direction_; }
        double k_min() const noexcept { return k_min_; }
        int count() const noexcept { return int(values_.size()); }
        const std::vector<Complex> &values() const noexcept { return values_; }
        int m_bound() const noexcept { return m_bound_; }
        double phase_factor() const noexcept { return phase_factor_; }

        // k_min <= pi / (2 R) for source data, pi / (4 R) for backscatter data
        bool satisfies_aliasing_bound(double search_radius) const;

    private:
        Vec direction_;
        double k_min_;
        std::vector<Complex> values_;
        int m_bound_;
        double phase_factor_;
    };

    // U(i, j) = u(xhat, k_{i+j+1}), shape (J - m_bound) x (m_bound + 1)
    Eigen::MatrixXcd build_hankel(const HankelData &data);

    // #{sigma_i > rel_tol sigma_1}; 0 for the zero matrix
    int estimate_rank(const Eigen::VectorXd &singular_values, double rel_tol);
    int estimate_rank(const Eigen::MatrixXcd &u, double rel_tol);

    struct HankelFactorization
    {
        Eigen::MatrixXcd u;
        Eigen::VectorXd singular_values; // descending
        int rank = 0;
        Eigen::MatrixXcd range_basis; // first `rank` left singular vectors
    };

    HankelFactorization factorize(const HankelData &data, double rel_tol);

    // Vandermonde probe (1, xi, ..., xi^{J - m_bound - 1}), xi = exp(-i f k_min xhat.z)
    Eigen::VectorXcd probe(const Vec &z, const HankelData &data);

    struct RangeTest
    {
        double value;    // 1 / (residual + eps_reg)
        double residual; // |phi - P phi| / |phi|
        bool aliased;    // |f k_min xhat.z| >= pi
    };

    inline constexpr double eps_reg = 1e-12;

    // Throws empty_signal when the factorization has rank 0.
    RangeTest range_test_indicator(const Vec &z, const HankelData &data, const HankelFactorization &fact);

    struct RangeSweep
    {
        IndicatorField field;
        std::size_t aliased_nodes;  // nodes flagged by at least one direction
        std::vector<int> ranks;     // M* per direction
    };

    // Superposition of the range-test indicator over directions. Directions whose
    // data has rank 0 carry no hyperplane and are skipped; if every direction has
    // rank 0 the sweep throws empty_signal.
    RangeSweep locate_by_range_test(const SamplingGrid &grid, std::span<const HankelData> data, double rel_tol,
                                    unsigned threads = 0);

    struct VandermondeSolution
    {
        std::vector<Complex> strengths;
        double residual;  // |V T - U| / |U|
        double condition; // sigma_max / sigma_min of V
    };

    // Least-squares solve of V T = U with V(j, m) = eta_m^j, eta_m = exp(-i f k_min xhat.z_m).
    // Throws degenerate_projection when cond(V) > 1e12.
    VandermondeSolution solve_strengths_vandermonde(std::span<const Vec> locations, const HankelData &data);
}

#endif
