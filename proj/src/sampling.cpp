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


#include "pointscat/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

namespace pointscat
{
    SamplingGrid::SamplingGrid(Dimension dim, Vec lower, Vec upper, double spacing)
        : dim_(dim), lower_(std::move(lower)), upper_(std::move(upper)), spacing_(spacing)
    {
        if (lower_.size() != dim_.value() || upper_.size() != dim_.value())
            throw Error(Errc::validation, "grid corners must have dim coordinates");
        if (!(spacing_ > 0.0) || !std::isfinite(spacing_))
            throw Error(Errc::validation, "grid spacing must be positive");
        size_ = 1;
        for (int a = 0; a < dim_.value(); ++a)
        {
            if (!(upper_(a) > lower_(a)) || !std::isfinite(upper_(a) - lower_(a)))
                throw Error(Errc::validation, "grid upper corner must exceed the lower corner on every axis");
            const double steps = std::floor((upper_(a) - lower_(a)) / spacing_ + 1e-9);
            if (steps > 1e7)
                throw Error(Errc::validation, "grid has too many nodes per axis");
            shape_[std::size_t(a)] = std::size_t(steps) + 1;
            if (shape_[std::size_t(a)] < 2)
                throw Error(Errc::validation, "grid needs at least two nodes per axis");
            size_ *= shape_[std::size_t(a)];
        }
    }

    std::size_t SamplingGrid::flat(const std::array<std::size_t, 3> &idx) const noexcept
    {
        return (idx[0] * shape_[1] + idx[1]) * shape_[2] + idx[2];
    }

    std::array<std::size_t, 3> SamplingGrid::unflat(std::size_t f) const noexcept
    {
        std::array<std::size_t, 3> idx{};
        idx[2] = f % shape_[2];
        f /= shape_[2];
        idx[1] = f % shape_[1];
        idx[0] = f / shape_[1];
        return idx;
    }

    Vec SamplingGrid::node(std::size_t f) const
    {
        const auto idx = unflat(f);
        Vec z(dim_.value());
        for (int a = 0; a < dim_.value(); ++a)
            z(a) = lower_(a) + double(idx[std::size_t(a)]) * spacing_;
        return z;
    }

    std::string to_string(IndicatorSource s)
    {
        switch (s)
        {
        case IndicatorSource::source_pairs:
            return "source_pairs";
        case IndicatorSource::backscatter:
            return "backscatter";
        case IndicatorSource::range_test:
            return "range_test";
        case IndicatorSource::phaseless:
            return "phaseless";
        }
        return "unknown";
    }

    IndicatorField::IndicatorField(SamplingGrid g, std::vector<double> v, IndicatorSource s)
        : grid(std::move(g)), values(std::move(v)), source(s)
    {
        if (values.size() != grid.size())
            throw Error(Errc::validation, "indicator field size does not match its grid");
        for (double x : values)
            if (!(x >= 0.0) || !std::isfinite(x))
                throw Error(Errc::validation, "indicator values must be finite and non-negative");
    }

    std::size_t IndicatorField::argmax() const
    {
        if (values.empty())
            throw Error(Errc::validation, "indicator field is empty");
        return std::size_t(std::max_element(values.begin(), values.end()) - values.begin());
    }

    std::vector<Peak> extract_peaks(const IndicatorField &field, double min_separation, double threshold_ratio)
    {
        if (field.values.empty())
            throw Error(Errc::validation, "indicator field is empty");
        if (!(threshold_ratio > 0.0 && threshold_ratio < 1.0))
            throw Error(Errc::validation, "threshold_ratio must lie in (0, 1)");
        if (!(min_separation >= field.grid.spacing()))
            throw Error(Errc::validation, "min_separation must be at least the grid spacing");

        const SamplingGrid &g = field.grid;
        const auto &shape = g.shape();
        const double vmax = *std::max_element(field.values.begin(), field.values.end());
        if (!(vmax > 0.0))
            return {};
        const double threshold = threshold_ratio * vmax;

        std::vector<std::size_t> candidates;
        for (std::size_t f = 0; f < g.size(); ++f)
        {
            const double v = field.values[f];
            if (v < threshold)
                continue;
            const auto idx = g.unflat(f);
            bool is_max = true;
            for (int d0 = -1; d0 <= 1 && is_max; ++d0)
                for (int d1 = -1; d1 <= 1 && is_max; ++d1)
                    for (int d2 = -1; d2 <= 1 && is_max; ++d2)
                    {
                        const std::array<long, 3> n{long(idx[0]) + d0, long(idx[1]) + d1, long(idx[2]) + d2};
                        bool inside = true;
                        for (int a = 0; a < 3; ++a)
                            inside = inside && n[a] >= 0 && n[a] < long(shape[a]);
                        if (!inside || (d0 == 0 && d1 == 0 && d2 == 0))
                            continue;
                        const std::size_t nf = g.flat({std::size_t(n[0]), std::size_t(n[1]), std::size_t(n[2])});
                        if (field.values[nf] > v)
                            is_max = false;
                    }
            if (is_max)
                candidates.push_back(f);
        }

        // Flat order is lexicographic in the node coordinates, so the index breaks ties.
        std::stable_sort(candidates.begin(), candidates.end(), [&field](std::size_t a, std::size_t b) {
            return field.values[a] > field.values[b];
        });

        std::vector<Peak> peaks;
        for (std::size_t f : candidates)
        {
            const Vec z = g.node(f);
            const bool suppressed = std::any_of(peaks.begin(), peaks.end(), [&](const Peak &p) {
                return (p.location - z).norm() < min_separation;
            });
            if (!suppressed)
                peaks.push_back({z, field.values[f]});
        }
        return peaks;
    }

    std::vector<double> sweep(const SamplingGrid &grid, const std::function<double(const Vec &)> &f, unsigned threads)
    {
        if (threads == 0)
            threads = std::max(1u, std::thread::hardware_concurrency());
        const std::size_t n = grid.size();
        threads = unsigned(std::min<std::size_t>(threads, std::max<std::size_t>(1, n)));
        std::vector<double> out(n);
        std::vector<std::exception_ptr> errors(threads);

        auto work = [&](unsigned t) {
            try
            {
                const std::size_t begin = n * t / threads, end = n * (t + 1) / threads;
                for (std::size_t i = begin; i < end; ++i)
                    out[i] = f(grid.node(i));
            }
            catch (...)
            {
                errors[t] = std::current_exception();
            }
        };

        if (threads == 1)
            work(0);
        else
        {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t)
                pool.emplace_back(work, t);
            for (auto &th : pool)
                th.join();
        }
        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
        return out;
    }
}
