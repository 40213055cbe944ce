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

#ifndef POINTSCAT_IO_HPP
#define POINTSCAT_IO_HPP

#include "pointscat/forward.hpp"
#include "pointscat/multi_inversion.hpp"
#include "pointscat/sampling.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace pointscat::io
{
    using Json = nlohmann::ordered_json;

    inline constexpr int schema_version = 1;

    // Serializes with every floating-point number printed as %.17g, so equal
    // documents give byte-identical text. Arrays of scalars stay on one line.
    std::string dump(const Json &doc);

    // Parse errors carry the file name and the parser's byte offset.
    Json parse_text(const std::string &text, const std::string &origin);
    Json read_file(const std::filesystem::path &path);
    std::string read_text(const std::filesystem::path &path);
    void write_file(const std::filesystem::path &path, const std::string &text);

    // Field access that reports the JSON path of the offending entry
    const Json &field(const Json &obj, const std::string &key, const std::string &path);
    double number(const Json &j, const std::string &path);
    int integer(const Json &j, const std::string &path);
    std::string text(const Json &j, const std::string &path);
    Vec point(const Json &j, const std::string &path);
    Complex complex(const Json &j, const std::string &path); // [re, im]

    Json to_json(const Vec &v);
    Json to_json(Complex c);

    std::string to_string(MeasurementKind kind);
    MeasurementKind measurement_kind(const std::string &name, const std::string &path);

    Json to_json(const FrequencyGrid &freqs);
    FrequencyGrid frequency_grid(const Json &j, const std::string &path);

    // {schema_version, kind, dim, sensors, freqs, noise_level, seed, values}
    Json to_json(const MeasurementSet &m);
    MeasurementSet measurement_set(const Json &j, const std::string &path = "$");

    // sensor_index,k,re,im
    std::string to_csv(const MeasurementSet &m);

    Json to_json(const SamplingGrid &grid);
    SamplingGrid sampling_grid(const Json &j, Dimension dim, const std::string &path);

    // One row per node: coordinates then value
    std::string to_csv(const IndicatorField &field);
    // {grid, shape, source, values} with values in flat node order (last axis fastest)
    Json to_json(const IndicatorField &field);

    // {locations, strengths: [[re, im]], diagnostics}
    Json to_json(const ReconstructionResult &r);
}

#endif
