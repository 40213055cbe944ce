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

#include "pointscat/forward.hpp"
#include "pointscat/rng.hpp"
#include "pointscat/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pointscat
{
    namespace
    {
        void require_dim(const Vec &v, Dimension dim, const char *what)
        {
            if (v.size() != dim.value())
                throw Error(Errc::validation, std::string(what) + " has " + std::to_string(v.size()) +
                                                  " coordinates, expected " + std::to_string(dim.value()));
            if (!v.allFinite())
                throw Error(Errc::validation, std::string(what) + " has non-finite coordinates");
        }

        void require_positive_k(double k)
        {
            if (!(k > 0.0) || !std::isfinite(k))
                throw Error(Errc::validation, "wavenumber must be positive and finite");
        }
    }

    void require_unit(const Vec &v, const char *what)
    {
        if (std::abs(v.norm() - 1.0) > 1e-12)
            throw Error(Errc::validation, std::string(what) + " must have unit norm (|v| = " + std::to_string(v.norm()) + ")");
    }

    // ---------------------------------------------------------------------------------------------

    PointConfiguration::PointConfiguration(Dimension dim, std::vector<PointObject> points)
        : dim_(dim), points_(std::move(points))
    {
        for (std::size_t m = 0; m < points_.size(); ++m)
        {
            require_dim(points_[m].location, dim_, "point location");
            const Complex t = points_[m].strength;
            if (t == Complex(0.0) || !std::isfinite(t.real()) || !std::isfinite(t.imag()))
                throw Error(Errc::validation, "point " + std::to_string(m) + " has zero or non-finite strength");
            for (std::size_t n = 0; n < m; ++n)
                if (points_[n].location == points_[m].location)
                    throw Error(Errc::validation, "points " + std::to_string(n) + " and " + std::to_string(m) +
                                                      " share a location");
        }
    }

    SensorSet::SensorSet(SensorKind kind, Dimension dim, std::vector<Vec> entries)
        : kind_(kind), dim_(dim), entries_(std::move(entries))
    {
        for (const Vec &e : entries_)
        {
            require_dim(e, dim_, "sensor");
            if (kind_ == SensorKind::far)
                require_unit(e, "observation direction");
        }
    }

    std::optional<std::size_t> SensorSet::find(const Vec &v, double tol) const
    {
        if (v.size() != dim_.value())
            return std::nullopt;
        for (std::size_t l = 0; l < entries_.size(); ++l)
            if ((entries_[l] - v).lpNorm<Eigen::Infinity>() <= tol)
                return l;
        return std::nullopt;
    }

    FrequencyGrid FrequencyGrid::band(double k_lo, double k_hi, double dk)
    {
        if (!(k_lo > 0.0) || !(k_hi > k_lo) || !(dk > 0.0) || !std::isfinite(k_hi))
            throw Error(Errc::validation, "frequency band needs 0 < k_lo < k_hi and dk > 0");
        const double steps = (k_hi - k_lo) / dk;
        const double rounded = std::round(steps);
        if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, steps))
            throw Error(Errc::validation, "dk does not divide the band [k_lo, k_hi]");
        const auto n = static_cast<std::size_t>(rounded) + 1;
        std::vector<double> nodes(n);
        for (std::size_t j = 0; j + 1 < n; ++j)
            nodes[j] = k_lo + double(j) * dk;
        nodes[n - 1] = k_hi;
        return FrequencyGrid(FrequencyMode::band, k_lo, k_hi, dk, std::move(nodes));
    }

    FrequencyGrid FrequencyGrid::equidistant(double k_min, int count)
    {
        if (!(k_min > 0.0) || !std::isfinite(k_min) || count < 1)
            throw Error(Errc::validation, "equidistant grid needs k_min > 0 and J >= 1");
        std::vector<double> nodes(static_cast<std::size_t>(count));
        for (int j = 1; j <= count; ++j)
            nodes[j - 1] = j * k_min;
        return FrequencyGrid(FrequencyMode::equidistant, k_min, 0.0, k_min, std::move(nodes));
    }

    MeasurementSet::MeasurementSet(MeasurementKind kind, SensorSet sensors, FrequencyGrid freqs, Eigen::MatrixXcd values,
                                   double noise_level, std::uint64_t seed)
        : kind_(kind), sensors_(std::move(sensors)), freqs_(std::move(freqs)), values_(std::move(values)),
          noise_level_(noise_level), seed_(seed)
    {
        if (values_.rows() != Eigen::Index(sensors_.size()) || values_.cols() != Eigen::Index(freqs_.size()))
            throw Error(Errc::validation, "measurement array shape does not match sensors x frequencies");
        const bool wants_far = kind_ != MeasurementKind::near;
        if (wants_far != (sensors_.kind() == SensorKind::far))
            throw Error(Errc::validation, "measurement kind does not match the sensor kind");
        if (!(noise_level_ >= 0.0))
            throw Error(Errc::validation, "noise level must be non-negative");
    }

    MeasurementSet MeasurementSet::canonical() const
    {
        std::vector<std::size_t> order(sensors_.size());
        std::iota(order.begin(), order.end(), 0);
        const auto &e = sensors_.entries();
        std::stable_sort(order.begin(), order.end(), [&e](std::size_t a, std::size_t b) {
            return std::lexicographical_compare(e[a].begin(), e[a].end(), e[b].begin(), e[b].end());
        });
        std::vector<Vec> entries;
        Eigen::MatrixXcd vals(values_.rows(), values_.cols());
        for (std::size_t r = 0; r < order.size(); ++r)
        {
            entries.push_back(e[order[r]]);
            vals.row(Eigen::Index(r)) = values_.row(Eigen::Index(order[r]));
        }
        return MeasurementSet(kind_, SensorSet(sensors_.kind(), sensors_.dim(), std::move(entries)), freqs_,
                              std::move(vals), noise_level_, seed_);
    }

    // ---------------------------------------------------------------------------------------------

    namespace forward
    {
        Complex far_phase(double k, const Vec &xhat, const Vec &z)
        {
            return std::polar(1.0, -k * xhat.dot(z));
        }

        Complex scattered_field_sources(const PointConfiguration &cfg, const Vec &x, double k)
        {
            require_dim(x, cfg.dim(), "sensor");
            require_positive_k(k);
            Complex sum = 0.0;
            for (const auto &p : cfg.points())
                sum += p.strength * specfun::fundamental_solution(x, p.location, k, cfg.dim());
            return sum;
        }

        Complex farfield_sources(const PointConfiguration &cfg, const Vec &xhat, double k)
        {
            require_dim(xhat, cfg.dim(), "observation direction");
            require_unit(xhat, "observation direction");
            require_positive_k(k);
            Complex sum = 0.0;
            for (const auto &p : cfg.points())
                sum += p.strength * far_phase(k, xhat, p.location);
            return sum;
        }

        Complex scattered_field_scatterers(const PointConfiguration &cfg, const Vec &x, const Vec &theta, double k)
        {
            require_dim(x, cfg.dim(), "sensor");
            require_dim(theta, cfg.dim(), "incident direction");
            require_unit(theta, "incident direction");
            require_positive_k(k);
            Complex sum = 0.0;
            for (const auto &p : cfg.points())
            {
                const Complex incident = std::polar(1.0, k * p.location.dot(theta));
                sum += p.strength * incident * specfun::fundamental_solution(x, p.location, k, cfg.dim());
            }
            return sum;
        }

        Complex farfield_scatterers(const PointConfiguration &cfg, const Vec &xhat, const Vec &theta, double k)
        {
            require_dim(xhat, cfg.dim(), "observation direction");
            require_dim(theta, cfg.dim(), "incident direction");
            require_unit(xhat, "observation direction");
            require_unit(theta, "incident direction");
            require_positive_k(k);
            const Vec diff = xhat - theta;
            Complex sum = 0.0;
            for (const auto &p : cfg.points())
                sum += p.strength * far_phase(k, diff, p.location);
            return sum;
        }

        MeasurementSet simulate(const PointConfiguration &cfg, const SensorSet &sensors, const FrequencyGrid &freqs,
                                MeasurementKind kind)
        {
            if (!(sensors.dim() == cfg.dim()))
                throw Error(Errc::validation, "sensor dimension differs from configuration dimension");
            const auto &ks = freqs.nodes();
            const auto &entries = sensors.entries();
            Eigen::MatrixXcd values(Eigen::Index(entries.size()), Eigen::Index(ks.size()));
            for (std::size_t l = 0; l < entries.size(); ++l)
            {
                for (std::size_t j = 0; j < ks.size(); ++j)
                {
                    Complex v;
                    switch (kind)
                    {
                    case MeasurementKind::near:
                        v = scattered_field_sources(cfg, entries[l], ks[j]);
                        break;
                    case MeasurementKind::far:
                        v = farfield_sources(cfg, entries[l], ks[j]);
                        break;
                    case MeasurementKind::backscatter:
                        v = farfield_scatterers(cfg, entries[l], -entries[l], ks[j]);
                        break;
                    }
                    values(Eigen::Index(l), Eigen::Index(j)) = v;
                }
            }
            return MeasurementSet(kind, sensors, freqs, std::move(values), 0.0, 0);
        }

        MeasurementSet add_noise(const MeasurementSet &m, double level, std::uint64_t seed)
        {
            if (!(level >= 0.0) || !std::isfinite(level))
                throw Error(Errc::validation, "noise level must be non-negative");
            Eigen::MatrixXcd values = m.values();
            if (level > 0.0)
            {
                const Eigen::Index rows = values.rows(), cols = values.cols();
                Eigen::MatrixXcd noise(rows, cols);
                for (Eigen::Index l = 0; l < rows; ++l)
                    for (Eigen::Index j = 0; j < cols; ++j)
                        noise(l, j) = rng::complex_normal(seed, std::uint64_t(l * cols + j));
                const double noise_norm = noise.norm();
                const double data_norm = values.norm();
                if (noise_norm > 0.0 && data_norm > 0.0)
                    values += (level * data_norm / noise_norm) * noise;
            }
            return MeasurementSet(m.kind(), m.sensors(), m.freqs(), std::move(values), level, seed);
        }
    }
}
