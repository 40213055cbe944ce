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

#ifndef POINTSCAT_MULTI_INVERSION_HPP
#define POINTSCAT_MULTI_INVERSION_HPP

#include "pointscat/forward.hpp"
#include "pointscat/sampling.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace pointscat
{
    // Output of every inversion pipeline
    struct ReconstructionResult
    {
        std::vector<Vec> locations;
        std::vector<Complex> strengths; // empty or one per location
        std::map<std::string, double> diagnostics;
        std::map<std::string, std::vector<double>> diagnostic_series;
        std::vector<std::string> notes;
    };
}

namespace pointscat::multi
{
    // Rows of +xhat and -xhat in a far-field or backscatter measurement set
    struct DirectionPair
    {
        Vec direction;
        std::size_t plus_row;
        std::size_t minus_row;
    };

    // Throws incomplete_data when xhat or -xhat has no row.
    DirectionPair find_pair(const MeasurementSet &data, const Vec &xhat);

    // All data directions whose antipode is also present, in row order
    std::vector<Vec> paired_directions(const MeasurementSet &data);

    // 2 for backscatter data (phases exp(-2ik xhat.z)), 1 for source far fields
    double phase_factor(const MeasurementSet &data);

    // | int_band { u(xhat,k) e^{i f k xhat.z} + u(-xhat,k) e^{-i f k xhat.z} } dk |,
    // trapezoid on the measured band, f = phase_factor(data). Exactly symmetric in xhat.
    double indicator_direction_pair(const Vec &z, const Vec &xhat, const MeasurementSet &data);

    // Sum of indicator_direction_pair over `directions` on every grid node
    IndicatorField indicator_total(const SamplingGrid &grid, std::span<const Vec> directions,
                                   const MeasurementSet &data, unsigned threads = 0);

    // Smallest |xhat.(z_a - z_b)| over pairs of locations (infinity for fewer than two)
    double min_projection_gap(const Vec &xhat, std::span<const Vec> locations);

    // Direction among `candidates` with the largest min_projection_gap
    Vec best_separating_direction(std::span<const Vec> candidates, std::span<const Vec> locations);

    // tau_m = 1/(2W) int_band { u(xhat,k) e^{i f k xhat.z_m} + u(-xhat,k) e^{-i f k xhat.z_m} } dk
    // Throws direction_degenerate when two locations are closer than eps_sep in projection.
    std::vector<Complex> strengths_at_locations(std::span<const Vec> locations, const Vec &xhat,
                                                const MeasurementSet &data, double eps_sep);

    struct LocalStrengths
    {
        std::vector<Complex> strengths;
        std::vector<double> gaps;     // separation of z_m from the others along its direction
        std::vector<std::size_t> directions; // index into `candidates` used for each location
    };

    // Strength formula applied location by location, each with the candidate direction
    // that best separates z_m from the other locations. Only xhat.z_m != xhat.z_m' for
    // the m at hand is needed, so this works when no single direction separates all
    // projections. Throws direction_degenerate when some z_m has gap <= eps_sep on
    // every candidate.
    LocalStrengths strengths_per_location(std::span<const Vec> locations, std::span<const Vec> candidates,
                                          const MeasurementSet &data, double eps_sep);

    // For real strengths u(-xhat, k) = conj(u(xhat, k)); appends the missing antipodal
    // rows by conjugation. Far-field source data only.
    MeasurementSet extend_by_conjugation(const MeasurementSet &data);
}

#endif
