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

#ifndef POINTSCAT_PIPELINE_HPP
#define POINTSCAT_PIPELINE_HPP

#include "pointscat/forward.hpp"
#include "pointscat/geometry.hpp"
#include "pointscat/io.hpp"
#include "pointscat/multi_inversion.hpp"
#include "pointscat/sampling.hpp"
#include "pointscat/single_inversion.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace pointscat::pipeline
{
    enum class Method
    {
        single_near,     // band distances, four-sphere localization, near-field strength
        single_far,      // band projections on n directions, linear solve, far-field strength
        phaseless,       // grid argmax of the phaseless indicator at one wavenumber
        trilaterate,     // fixed-k radii |tau| / (4 pi |u|), four-sphere localization
        multi_indicator, // superposed direction-pair indicators, peaks, band-averaged strengths
        music            // Hankel range test per direction, peaks, Vandermonde strengths
    };

    std::string to_string(Method m);

    enum class Problem
    {
        sources,
        scatterers_backscatter
    };

    struct MethodParameters
    {
        single::BandOptions band;
        bool noise_aware = true; // widen the band-quotient check by the declared noise level
        geometry::TrilaterationOptions geo;
        bool least_squares = false; // linearized sphere fit instead of the four-step scheme
        double threshold_ratio = 0.5;
        std::optional<double> min_separation; // default 2 x grid spacing
        std::optional<double> eps_sep;        // default grid spacing
        std::optional<Vec> strength_direction;
        bool assume_real_strengths = false;
        int m_bound = 0;
        std::optional<double> search_radius;
        std::optional<double> rel_tol;     // default max(1e-8, 3 x noise level)
        std::optional<double> tau_modulus; // declared prior |tau1| for phaseless / trilaterate
        std::optional<double> phaseless_k; // default: moduli averaged over the band
    };

    // Everything an inversion may read besides the measurements
    struct InversionSpec
    {
        std::string name;
        Method method = Method::single_near;
        std::optional<SamplingGrid> grid;
        MethodParameters params;
        unsigned threads = 0;
    };

    struct ExperimentConfig
    {
        std::string name;
        Problem problem;
        PointConfiguration truth;
        SensorSet sensors;
        FrequencyGrid freqs;
        double noise_level;
        std::uint64_t seed;
        InversionSpec inversion;
        io::Json source; // the parsed document
    };

    // Full experiment (truth, sensors, frequencies, noise, method). Validation
    // errors name the JSON path of the offending field.
    ExperimentConfig parse_config(const io::Json &doc);

    // Inversion part only; never touches "points".
    InversionSpec parse_inversion(const io::Json &doc);

    std::vector<std::string> preset_names();
    io::Json preset(const std::string &name);

    MeasurementKind measurement_kind(const ExperimentConfig &cfg);

    // Forward simulation followed by noise at (noise_level, seed)
    MeasurementSet simulate(const ExperimentConfig &cfg);

    struct InversionOutput
    {
        ReconstructionResult result;
        std::optional<IndicatorField> field;
    };

    // Blind inversion: reads only the measurements and the declared method inputs.
    // Rows are put in canonical order first, so the result does not depend on the
    // sensor order of the file.
    InversionOutput invert(const InversionSpec &spec, const MeasurementSet &data);

    // Human-readable summary. With a truth configuration the table pairs every true
    // point with its nearest reconstruction.
    std::string report(const InversionSpec &spec, const MeasurementSet &data, const InversionOutput &out,
                       const PointConfiguration *truth);

    // Writes measurements.json, indicator.csv / indicator.json (if a field exists),
    // result.json and report.txt into dir.
    void write_artifacts(const std::filesystem::path &dir, const MeasurementSet &data, const InversionOutput &out,
                         const std::string &report_text);
}

#endif
