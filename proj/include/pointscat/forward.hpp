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

#ifndef POINTSCAT_FORWARD_HPP
#define POINTSCAT_FORWARD_HPP

#include "pointscat/types.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <vector>

namespace pointscat
{
    struct PointObject
    {
        Vec location;
        Complex strength;
    };

    // M point sources or point-like scatterers. Strengths are nonzero and
    // locations pairwise distinct; M = 0 is allowed.
    class PointConfiguration
    {
    public:
        PointConfiguration(Dimension dim, std::vector<PointObject> points);

        Dimension dim() const noexcept { return dim_; }
        const std::vector<PointObject> &points() const noexcept { return points_; }
        std::size_t size() const noexcept { return points_.size(); }

    private:
        Dimension dim_;
        std::vector<PointObject> points_;
    };

    enum class SensorKind
    {
        near, // sensor positions in R^n
        far   // observation directions on the unit sphere
    };

    class SensorSet
    {
    public:
        SensorSet(SensorKind kind, Dimension dim, std::vector<Vec> entries);

        SensorKind kind() const noexcept { return kind_; }
        Dimension dim() const noexcept { return dim_; }
        const std::vector<Vec> &entries() const noexcept { return entries_; }
        std::size_t size() const noexcept { return entries_.size(); }

        // Row index of the entry equal to v within tol, if present
        std::optional<std::size_t> find(const Vec &v, double tol = 1e-9) const;

    private:
        SensorKind kind_;
        Dimension dim_;
        std::vector<Vec> entries_;
    };

    enum class FrequencyMode
    {
        band,       // k_-, k_- + dk, ..., k_+
        equidistant // k_j = j k_min, j = 1..J
    };

    class FrequencyGrid
    {
    public:
        // Throws unless 0 < k_lo < k_hi, dk > 0 and dk divides the band to 1e-9 relative.
        static FrequencyGrid band(double k_lo, double k_hi, double dk);
        static FrequencyGrid equidistant(double k_min, int count);

        FrequencyMode mode() const noexcept { return mode_; }
        const std::vector<double> &nodes() const noexcept { return nodes_; }
        std::size_t size() const noexcept { return nodes_.size(); }

        // band parameters (band mode)
        double k_lo() const noexcept { return a_; }
        double k_hi() const noexcept { return b_; }
        double dk() const noexcept { return c_; }
        // equidistant parameters
        double k_min() const noexcept { return a_; }
        int count() const noexcept { return static_cast<int>(nodes_.size()); }

        double width() const noexcept { return nodes_.back() - nodes_.front(); }

    private:
        FrequencyGrid(FrequencyMode mode, double a, double b, double c, std::vector<double> nodes)
            : mode_(mode), a_(a), b_(b), c_(c), nodes_(std::move(nodes)) {}

        FrequencyMode mode_;
        double a_, b_, c_;
        std::vector<double> nodes_;
    };

    enum class MeasurementKind
    {
        near,       // u^s(x, k) of point sources
        far,        // u^inf(xhat, k) of point sources
        backscatter // u^inf(xhat, -xhat, k) of point-like scatterers
    };

    // Dense sensor x frequency data. values(l, j) belongs to sensor l and node j.
    class MeasurementSet
    {
    public:
        MeasurementSet(MeasurementKind kind, SensorSet sensors, FrequencyGrid freqs, Eigen::MatrixXcd values,
                       double noise_level = 0.0, std::uint64_t seed = 0);

        MeasurementKind kind() const noexcept { return kind_; }
        const SensorSet &sensors() const noexcept { return sensors_; }
        const FrequencyGrid &freqs() const noexcept { return freqs_; }
        const Eigen::MatrixXcd &values() const noexcept { return values_; }
        double noise_level() const noexcept { return noise_level_; }
        std::uint64_t seed() const noexcept { return seed_; }
        Dimension dim() const noexcept { return sensors_.dim(); }

        // Same data with rows sorted lexicographically by sensor coordinates.
        // Inversion pipelines use this so results do not depend on row order.
        MeasurementSet canonical() const;

    private:
        MeasurementKind kind_;
        SensorSet sensors_;
        FrequencyGrid freqs_;
        Eigen::MatrixXcd values_;
        double noise_level_;
        std::uint64_t seed_;
    };

    namespace forward
    {
        // exp(-i k xhat.z): the single phase convention shared by every far field
        Complex far_phase(double k, const Vec &xhat, const Vec &z);

        // sum_m tau_m Phi_k(x, z_m)
        Complex scattered_field_sources(const PointConfiguration &cfg, const Vec &x, double k);

        // sum_m tau_m exp(-i k xhat.z_m)
        Complex farfield_sources(const PointConfiguration &cfg, const Vec &xhat, double k);

        // Born / Foldy single scattering of the plane wave exp(i k x.theta):
        // sum_m tau_m exp(i k z_m.theta) Phi_k(x, z_m)
        Complex scattered_field_scatterers(const PointConfiguration &cfg, const Vec &x, const Vec &theta, double k);

        // sum_m tau_m exp(-i k (xhat - theta).z_m)
        Complex farfield_scatterers(const PointConfiguration &cfg, const Vec &xhat, const Vec &theta, double k);

        // Dense evaluation on sensors x frequencies. near/far use the source model,
        // backscatter the scatterer model at theta = -xhat.
        MeasurementSet simulate(const PointConfiguration &cfg, const SensorSet &sensors, const FrequencyGrid &freqs,
                                MeasurementKind kind);

        // Adds i.i.d. complex Gaussian noise rescaled so that ||noise||_2 = level ||u||_2
        // over the whole array. Deterministic in (values, level, seed).
        MeasurementSet add_noise(const MeasurementSet &m, double level, std::uint64_t seed);
    }

    // Unit-norm check used for far-field directions
    void require_unit(const Vec &v, const char *what);
}

#endif
