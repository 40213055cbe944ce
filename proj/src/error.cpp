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

#include "pointscat/error.hpp"

namespace pointscat
{
    std::string_view to_string(Errc code) noexcept
    {
        switch (code)
        {
        case Errc::validation: return "ValidationError";
        case Errc::parse: return "ParseError";
        case Errc::domain: return "DomainError";
        case Errc::singularity: return "SingularityError";
        case Errc::degenerate_geometry: return "DegenerateGeometryError";
        case Errc::infeasible_distances: return "InfeasibleDistancesError";
        case Errc::ambiguous_solution: return "AmbiguityError";
        case Errc::resonant_band: return "ResonantBandError";
        case Errc::inconsistent_data: return "InconsistentDataError";
        case Errc::invalid_measurement: return "InvalidMeasurementError";
        case Errc::incomplete_data: return "IncompleteDataError";
        case Errc::direction_degenerate: return "DirectionDegenerateError";
        case Errc::insufficient_frequencies: return "InsufficientFrequenciesError";
        case Errc::empty_signal: return "EmptySignalError";
        case Errc::degenerate_projection: return "DegenerateProjectionError";
        case Errc::singular_system: return "SingularSystemError";
        }
        return "Error";
    }

    bool is_input_error(Errc code) noexcept
    {
        return code == Errc::validation || code == Errc::parse;
    }

    Error::Error(Errc code, const std::string &what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }
}
