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

#ifndef POINTSCAT_SAMPLING_HPP
#define POINTSCAT_SAMPLING_HPP

#include "pointscat/types.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace pointscat
{
    // Axis-aligned sampling grid with nodes lower + i * spacing. The node count per
    // axis is floor((upper - lower) / spacing + 1e-9) + 1, so the upper corner is a
    // node whenever spacing divides the extent.
    class SamplingGrid
    {
    public:
        SamplingGrid(Dimension dim, Vec lower, Vec upper, double spacing);

        Dimension dim() const noexcept { return dim_; }
        const Vec &lower() const noexcept { return lower_; }
        const Vec &upper() const noexcept { return upper_; }
        double spacing() const noexcept { return spacing_; }
        const std::array<std::size_t, 3> &shape() const noexcept { return shape_; }
        std::size_t size() const noexcept { return size_; }

        // Flat index with the last axis running fastest
        std::size_t flat(const std::array<std::size_t, 3> &idx) const noexcept;
        std::array<std::size_t, 3> unflat(std::size_t flat) const noexcept;
        Vec node(std::size_t flat) const;

    private:
        Dimension dim_;
        Vec lower_, upper_;
        double spacing_;
        std::array<std::size_t, 3> shape_{1, 1, 1};
        std::size_t size_ = 0;
    };

    enum class IndicatorSource
    {
        source_pairs,
        backscatter,
        range_test,
        phaseless
    };

    std::string to_string(IndicatorSource s);

    struct IndicatorField
    {
        IndicatorField(SamplingGrid grid, std::vector<double> values, IndicatorSource source);

        SamplingGrid grid;
        std::vector<double> values; // finite, >= 0, one per grid node
        IndicatorSource source;

        std::size_t argmax() const;
    };

    struct Peak
    {
        Vec location;
        double value;
    };

    // Local maxima (8 / 26 neighbourhood, ties allowed) with value >= threshold_ratio * max,
    // accepted greedily in descending value (then lexicographic coordinates) and
    // suppressing candidates within min_separation of an accepted peak.
    // An all-zero field has no peaks.
    std::vector<Peak> extract_peaks(const IndicatorField &field, double min_separation, double threshold_ratio);

    // Evaluates f on every node, splitting the nodes into contiguous chunks over
    // `threads` workers (0 = hardware concurrency). Results do not depend on the
    // thread count.
    std::vector<double> sweep(const SamplingGrid &grid, const std::function<double(const Vec &)> &f,
                              unsigned threads = 0);
}

#endif
