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


#include "pointscat/multi_inversion.hpp"

#include <cmath>
#include <limits>

namespace pointscat::multi
{
    DirectionPair find_pair(const MeasurementSet &data, const Vec &xhat)
    {
        if (data.sensors().kind() != SensorKind::far)
            throw Error(Errc::validation, "direction-pair indicators need far-field or backscatter data");
        const auto plus = data.sensors().find(xhat);
        const auto minus = data.sensors().find(-xhat);
        if (!plus || !minus)
            throw Error(Errc::incomplete_data, std::string("no data row for ") + (plus ? "-xhat" : "xhat") +
                                                   " of a requested direction pair");
        return {xhat, *plus, *minus};
    }

    std::vector<Vec> paired_directions(const MeasurementSet &data)
    {
        std::vector<Vec> out;
        for (const Vec &d : data.sensors().entries())
            if (data.sensors().find(-d))
                out.push_back(d);
        return out;
    }

    double phase_factor(const MeasurementSet &data)
    {
        return data.kind() == MeasurementKind::backscatter ? 2.0 : 1.0;
    }

    namespace
    {
        std::vector<double> trapezoid_weights(const std::vector<double> &ks)
        {
            const std::size_t n = ks.size();
            std::vector<double> w(n, 0.0);
            if (n < 2)
                throw Error(Errc::validation, "band integrals need at least two frequency nodes");
            for (std::size_t j = 0; j + 1 < n; ++j)
            {
                const double h = 0.5 * (ks[j + 1] - ks[j]);
                w[j] += h;
                w[j + 1] += h;
            }
            return w;
        }

        // One +-xhat pair with the quadrature weights already applied
        struct PairIntegrand
        {
            PairIntegrand(const MeasurementSet &data, const Vec &xhat)
                : direction(xhat), factor(phase_factor(data)), ks(data.freqs().nodes()), weights(trapezoid_weights(ks))
            {
                const DirectionPair pair = find_pair(data, xhat);
                for (std::size_t j = 0; j < ks.size(); ++j)
                {
                    plus.push_back(data.values()(Eigen::Index(pair.plus_row), Eigen::Index(j)));
                    minus.push_back(data.values()(Eigen::Index(pair.minus_row), Eigen::Index(j)));
                }
            }

            // int { u+ e^{i f k p} + u- e^{-i f k p} } dk with p = xhat.z. The phase is
            // built from |p| so that swapping xhat and -xhat swaps the two terms exactly.
            Complex integral(const Vec &z) const
            {
                const double p = direction.dot(z);
                const double a = std::abs(p);
                const double sign = p < 0.0 ? -1.0 : 1.0;
                Complex sum = 0.0;
                for (std::size_t j = 0; j < ks.size(); ++j)
                {
                    const double arg = factor * ks[j] * a;
                    const Complex e(std::cos(arg), sign * std::sin(arg));
                    sum += weights[j] * (plus[j] * e + minus[j] * std::conj(e));
                }
                return sum;
            }

            Vec direction;
            double factor;
            std::vector<double> ks, weights;
            std::vector<Complex> plus, minus;
        };
    }

    double indicator_direction_pair(const Vec &z, const Vec &xhat, const MeasurementSet &data)
    {
        if (z.size() != data.dim().value())
            throw Error(Errc::validation, "sampling point dimension differs from the data dimension");
        return std::abs(PairIntegrand(data, xhat).integral(z));
    }

    IndicatorField indicator_total(const SamplingGrid &grid, std::span<const Vec> directions,
                                   const MeasurementSet &data, unsigned threads)
    {
        if (!(grid.dim() == data.dim()))
            throw Error(Errc::validation, "grid dimension differs from the data dimension");
        std::vector<PairIntegrand> pairs;
        for (const Vec &d : directions)
            pairs.emplace_back(data, d);
        auto values = sweep(
            grid,
            [&pairs](const Vec &z) {
                double total = 0.0;
                for (const auto &p : pairs)
                    total += std::abs(p.integral(z));
                return total;
            },
            threads);
        const auto source = data.kind() == MeasurementKind::backscatter ? IndicatorSource::backscatter
                                                                         : IndicatorSource::source_pairs;
        return IndicatorField(grid, std::move(values), source);
    }

    double min_projection_gap(const Vec &xhat, std::span<const Vec> locations)
    {
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < locations.size(); ++a)
            for (std::size_t b = a + 1; b < locations.size(); ++b)
                gap = std::min(gap, std::abs(xhat.dot(locations[a] - locations[b])));
        return gap;
    }

    Vec best_separating_direction(std::span<const Vec> candidates, std::span<const Vec> locations)
    {
        if (candidates.empty())
            throw Error(Errc::incomplete_data, "no candidate direction for the strength formula");
        std::size_t best = 0;
        double best_gap = -1.0;
        for (std::size_t c = 0; c < candidates.size(); ++c)
        {
            const double gap = min_projection_gap(candidates[c], locations);
            if (gap > best_gap)
            {
                best_gap = gap;
                best = c;
            }
        }
        return candidates[best];
    }

    std::vector<Complex> strengths_at_locations(std::span<const Vec> locations, const Vec &xhat,
                                                const MeasurementSet &data, double eps_sep)
    {
        const double gap = min_projection_gap(xhat, locations);
        if (gap <= eps_sep)
            throw Error(Errc::direction_degenerate, "direction does not separate the location projections (gap " +
                                                        std::to_string(gap) + ")");
        const PairIntegrand pair(data, xhat);
        const double width = data.freqs().width();
        std::vector<Complex> out;
        for (const Vec &z : locations)
        {
            if (z.size() != data.dim().value())
                throw Error(Errc::validation, "location dimension differs from the data dimension");
            out.push_back(pair.integral(z) / (2.0 * width));
        }
        return out;
    }

    LocalStrengths strengths_per_location(std::span<const Vec> locations, std::span<const Vec> candidates,
                                          const MeasurementSet &data, double eps_sep)
    {
        if (candidates.empty())
            throw Error(Errc::incomplete_data, "no candidate direction for the strength formula");
        std::vector<PairIntegrand> pairs;
        for (const Vec &d : candidates)
            pairs.emplace_back(data, d);
        const double width = data.freqs().width();
        LocalStrengths out;
        for (std::size_t m = 0; m < locations.size(); ++m)
        {
            if (locations[m].size() != data.dim().value())
                throw Error(Errc::validation, "location dimension differs from the data dimension");
            std::size_t best = 0;
            double best_gap = -1.0;
            for (std::size_t c = 0; c < candidates.size(); ++c)
            {
                double gap = std::numeric_limits<double>::infinity();
                for (std::size_t n = 0; n < locations.size(); ++n)
                    if (n != m)
                        gap = std::min(gap, std::abs(candidates[c].dot(locations[m] - locations[n])));
                if (gap > best_gap)
                {
                    best_gap = gap;
                    best = c;
                }
            }
            if (best_gap <= eps_sep)
                throw Error(Errc::direction_degenerate, "no direction separates location " + std::to_string(m) +
                                                            " from the others (gap " + std::to_string(best_gap) + ")");
            out.strengths.push_back(pairs[best].integral(locations[m]) / (2.0 * width));
            out.gaps.push_back(std::isfinite(best_gap) ? best_gap : -1.0);
            out.directions.push_back(best);
        }
        return out;
    }

    MeasurementSet extend_by_conjugation(const MeasurementSet &data)
    {
        if (data.kind() != MeasurementKind::far)
            throw Error(Errc::validation, "conjugate extension applies to far-field source data");
        std::vector<Vec> entries = data.sensors().entries();
        std::vector<Eigen::Index> sources;
        for (std::size_t l = 0; l < data.sensors().size(); ++l)
            if (!data.sensors().find(-data.sensors().entries()[l]))
            {
                entries.push_back(-data.sensors().entries()[l]);
                sources.push_back(Eigen::Index(l));
            }
        Eigen::MatrixXcd values(Eigen::Index(entries.size()), data.values().cols());
        values.topRows(data.values().rows()) = data.values();
        for (std::size_t s = 0; s < sources.size(); ++s)
            values.row(data.values().rows() + Eigen::Index(s)) = data.values().row(sources[s]).conjugate();
        return MeasurementSet(data.kind(), SensorSet(SensorKind::far, data.dim(), std::move(entries)), data.freqs(),
                              std::move(values), data.noise_level(), data.seed());
    }
}
