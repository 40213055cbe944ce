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


#include "pointscat/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace pointscat::spectral
{
    HankelData::HankelData(Vec direction, double k_min, std::vector<Complex> values, int m_bound, double phase_factor)
        : direction_(std::move(direction)), k_min_(k_min), values_(std::move(values)), m_bound_(m_bound),
          phase_factor_(phase_factor)
    {
        require_unit(direction_, "observation direction");
        if (!(k_min_ > 0.0) || !std::isfinite(k_min_))
            throw Error(Errc::validation, "k_min must be positive");
        if (m_bound_ < 1)
            throw Error(Errc::validation, "M_bound must be at least 1");
        if (phase_factor_ != 1.0 && phase_factor_ != 2.0)
            throw Error(Errc::validation, "phase factor must be 1 or 2");
        if (int(values_.size()) <= 2 * m_bound_)
            throw Error(Errc::insufficient_frequencies, "J = " + std::to_string(values_.size()) +
                                                            " must exceed 2 M_bound = " + std::to_string(2 * m_bound_));
    }

    HankelData HankelData::from_measurements(const MeasurementSet &m, std::size_t row, int m_bound)
    {
        if (m.freqs().mode() != FrequencyMode::equidistant)
            throw Error(Errc::validation, "Hankel data needs equidistant wavenumbers k_j = j k_min");
        if (m.sensors().kind() != SensorKind::far)
            throw Error(Errc::validation, "Hankel data needs far-field or backscatter measurements");
        if (row >= m.sensors().size())
            throw Error(Errc::incomplete_data, "direction row out of range");
        const auto r = m.values().row(Eigen::Index(row));
        return HankelData(m.sensors().entries()[row], m.freqs().k_min(), std::vector<Complex>(r.begin(), r.end()),
                          m_bound, m.kind() == MeasurementKind::backscatter ? 2.0 : 1.0);
    }

    bool HankelData::satisfies_aliasing_bound(double search_radius) const
    {
        if (!(search_radius > 0.0))
            throw Error(Errc::validation, "search radius must be positive");
        return k_min_ <= pi / (2.0 * phase_factor_ * search_radius);
    }

    Eigen::MatrixXcd build_hankel(const HankelData &data)
    {
        const int rows = data.count() - data.m_bound();
        const int cols = data.m_bound() + 1;
        Eigen::MatrixXcd u(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                u(i, j) = data.values()[std::size_t(i + j)];
        return u;
    }

    int estimate_rank(const Eigen::VectorXd &sv, double rel_tol)
    {
        if (!(rel_tol > 0.0 && rel_tol < 1.0))
            throw Error(Errc::validation, "rank tolerance must lie in (0, 1)");
        if (sv.size() == 0 || !(sv(0) > 0.0))
            return 0;
        int rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > rel_tol * sv(0))
                ++rank;
        return rank;
    }

    int estimate_rank(const Eigen::MatrixXcd &u, double rel_tol)
    {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(u);
        return estimate_rank(svd.singularValues(), rel_tol);
    }

    HankelFactorization factorize(const HankelData &data, double rel_tol)
    {
        HankelFactorization f;
        f.u = build_hankel(data);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(f.u, Eigen::ComputeThinU | Eigen::ComputeThinV);
        f.singular_values = svd.singularValues();
        f.rank = estimate_rank(f.singular_values, rel_tol);
        f.range_basis = svd.matrixU().leftCols(f.rank);
        return f;
    }

    Eigen::VectorXcd probe(const Vec &z, const HankelData &data)
    {
        if (z.size() != data.direction().size())
            throw Error(Errc::validation, "sampling point dimension differs from the direction dimension");
        const int n = data.count() - data.m_bound();
        const double phase = -data.phase_factor() * data.k_min() * data.direction().dot(z);
        Eigen::VectorXcd phi(n);
        for (int j = 0; j < n; ++j)
            phi(j) = std::polar(1.0, double(j) * phase);
        return phi;
    }

    RangeTest range_test_indicator(const Vec &z, const HankelData &data, const HankelFactorization &fact)
    {
        if (fact.rank == 0)
            throw Error(Errc::empty_signal, "Hankel matrix has numerical rank 0");
        const Eigen::VectorXcd phi = probe(z, data);
        const Eigen::VectorXcd rest = phi - fact.range_basis * (fact.range_basis.adjoint() * phi);
        const double residual = rest.norm() / phi.norm();
        const bool aliased = std::abs(data.phase_factor() * data.k_min() * data.direction().dot(z)) >= pi;
        return {1.0 / (residual + eps_reg), residual, aliased};
    }

    RangeSweep locate_by_range_test(const SamplingGrid &grid, std::span<const HankelData> data, double rel_tol,
                                    unsigned threads)
    {
        std::vector<HankelFactorization> facts;
        std::vector<std::size_t> active;
        std::vector<int> ranks;
        for (std::size_t d = 0; d < data.size(); ++d)
        {
            if (data[d].direction().size() != grid.dim().value())
                throw Error(Errc::validation, "grid dimension differs from the direction dimension");
            facts.push_back(factorize(data[d], rel_tol));
            ranks.push_back(facts.back().rank);
            if (facts.back().rank > 0)
                active.push_back(d);
        }
        if (active.empty())
            throw Error(Errc::empty_signal, "every direction has numerical rank 0");

        auto values = sweep(
            grid,
            [&](const Vec &z) {
                double total = 0.0;
                for (std::size_t d : active)
                    total += range_test_indicator(z, data[d], facts[d]).value;
                return total;
            },
            threads);

        std::size_t aliased = 0;
        for (std::size_t n = 0; n < grid.size(); ++n)
        {
            const Vec z = grid.node(n);
            for (std::size_t d : active)
                if (std::abs(data[d].phase_factor() * data[d].k_min() * data[d].direction().dot(z)) >= pi)
                {
                    ++aliased;
                    break;
                }
        }
        return {IndicatorField(grid, std::move(values), IndicatorSource::range_test), aliased, std::move(ranks)};
    }

    VandermondeSolution solve_strengths_vandermonde(std::span<const Vec> locations, const HankelData &data)
    {
        const int j_count = data.count();
        const auto m = Eigen::Index(locations.size());
        if (m == 0)
            return {{}, 0.0, 1.0};
        Eigen::MatrixXcd v(j_count, m);
        for (Eigen::Index c = 0; c < m; ++c)
        {
            if (locations[std::size_t(c)].size() != data.direction().size())
                throw Error(Errc::validation, "location dimension differs from the direction dimension");
            const double phase = -data.phase_factor() * data.k_min() * data.direction().dot(locations[std::size_t(c)]);
            for (int j = 1; j <= j_count; ++j)
                v(j - 1, c) = std::polar(1.0, double(j) * phase);
        }
        Eigen::VectorXcd rhs(j_count);
        for (int j = 0; j < j_count; ++j)
            rhs(j) = data.values()[std::size_t(j)];

        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto &sv = svd.singularValues();
        const double condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
        if (m > j_count || !(condition <= 1e12))
            throw Error(Errc::degenerate_projection, "Vandermonde matrix is numerically rank deficient");
        const Eigen::VectorXcd t = svd.solve(rhs);
        const double rhs_norm = rhs.norm();
        const double residual = rhs_norm > 0.0 ? (v * t - rhs).norm() / rhs_norm : 0.0;
        return {std::vector<Complex>(t.begin(), t.end()), residual, condition};
    }
}
