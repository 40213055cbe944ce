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


#include "pointscat/pipeline.hpp"

#include <cmath>

namespace pointscat::pipeline
{
    using io::Json;

    namespace
    {
        Json point(std::initializer_list<double> loc, double re, double im)
        {
            return Json{{"location", Json(std::vector<double>(loc))}, {"strength", Json::array({re, im})}};
        }

        Json near_sensors()
        {
            return Json{{"kind", "near"},
                        {"entries", Json::array({Json::array({2.0, 0.0, 0.0}), Json::array({0.0, 2.0, 0.0}),
                                                 Json::array({0.0, 0.0, 2.0}), Json::array({-2.0, -2.0, -2.0})})}};
        }

        Json base(const std::string &name, int dim, const std::string &method)
        {
            Json doc = Json::object();
            doc["schema_version"] = io::schema_version;
            doc["name"] = name;
            doc["problem"] = "sources";
            doc["dim"] = dim;
            doc["method"] = method;
            return doc;
        }

        Json band(double lo, double hi, double dk)
        {
            return Json{{"mode", "band"}, {"k_lo", lo}, {"k_hi", hi}, {"dk", dk}};
        }

        Json noise(double level, std::uint64_t seed)
        {
            return Json{{"level", level}, {"seed", seed}};
        }

        Json grid(std::vector<double> lower, std::vector<double> upper, double spacing)
        {
            return Json{{"lower", lower}, {"upper", upper}, {"spacing", spacing}};
        }

        Json five_points()
        {
            return Json::array({point({1.0, 0.0}, 0.119437, 0.858134), point({0.0, 1.0}, 0.931100, 0.056194),
                                point({-1.0, 0.0}, 0.994541, 0.975031), point({0.0, -1.0}, 0.406819, 0.595928),
                                point({0.0, 0.0}, 0.117482, 0.901291)});
        }

        std::vector<double> uniform_angles(int count)
        {
            std::vector<double> a;
            for (int j = 0; j < count; ++j)
                a.push_back(2.0 * pi * j / count);
            return a;
        }

        // The word AMSS as 35 unit-strength points (9 + 10 + 8 + 8)
        Json amss_points()
        {
            std::vector<std::array<double, 2>> pts;
            const double ax = -1.55;
            for (auto [x, y] : std::vector<std::array<double, 2>>{{0.0, 0.5},
                                                                  {-0.15, 0.2},
                                                                  {0.15, 0.2},
                                                                  {-0.3, -0.1},
                                                                  {0.3, -0.1},
                                                                  {-0.45, -0.4},
                                                                  {0.45, -0.4},
                                                                  {-0.1, -0.1},
                                                                  {0.1, -0.1}})
                pts.push_back({ax + x, y});
            const double mx = -0.45;
            for (double y : {-0.4, -0.1, 0.2, 0.5})
            {
                pts.push_back({mx - 0.4, y});
                pts.push_back({mx + 0.4, y});
            }
            pts.push_back({mx - 0.2, 0.15});
            pts.push_back({mx + 0.2, 0.15});
            for (double sx : {0.45, 1.35})
                for (auto [x, y] : std::vector<std::array<double, 2>>{{0.3, 0.4},
                                                                      {0.05, 0.5},
                                                                      {-0.2, 0.4},
                                                                      {-0.15, 0.15},
                                                                      {0.1, -0.05},
                                                                      {0.25, -0.3},
                                                                      {0.05, -0.5},
                                                                      {-0.2, -0.4}})
                    pts.push_back({sx + x, y});
            Json out = Json::array();
            for (auto [x, y] : pts)
                // round to the 0.05 lattice so every point is a grid node
                out.push_back(point({std::round(x * 20.0) / 20.0, std::round(y * 20.0) / 20.0}, 1.0, 0.0));
            return out;
        }
    }

    std::vector<std::string> preset_names()
    {
        return {"table1", "table2", "table3", "five-sources", "amss", "music"};
    }

    Json preset(const std::string &name)
    {
        if (name == "table1" || name == "table2")
        {
            Json doc = base(name, 3, name == "table1" ? "phaseless" : "single-near");
            doc["points"] = Json::array({point({1.0, 1.0, 1.0}, 1.0, 1.0)});
            doc["sensors"] = near_sensors();
            doc["frequencies"] = band(1.0, 100.0, 0.005);
            doc["noise"] = noise(0.0, 1);
            if (name == "table1")
            {
                doc["grid"] = grid({0.0, 0.0, 0.0}, {2.0, 2.0, 2.0}, 0.05);
                doc["parameters"] = Json{{"tau_modulus", std::sqrt(2.0)}, {"phaseless_k", 1.0}};
            }
            return doc;
        }
        if (name == "table3")
        {
            Json doc = base(name, 3, "single-far");
            doc["points"] = Json::array({point({1.0, 1.0, 1.0}, 1.0, 1.0)});
            doc["sensors"] = Json{{"kind", "far"},
                                  {"entries", Json::array({Json::array({1.0, 0.0, 0.0}), Json::array({0.0, 1.0, 0.0}),
                                                           Json::array({0.0, 0.0, 1.0})})}};
            doc["frequencies"] = band(1.0, 100.0, 0.005);
            doc["noise"] = noise(0.0, 1);
            return doc;
        }
        if (name == "five-sources")
        {
            Json doc = base(name, 2, "multi-indicator");
            doc["points"] = five_points();
            std::vector<double> angles = uniform_angles(8);
            angles.push_back(pi / 16.0);
            angles.push_back(pi / 16.0 + pi);
            doc["sensors"] = Json{{"kind", "far"}, {"angles", angles}};
            doc["frequencies"] = band(40.0, 200.0, 1.0);
            doc["noise"] = noise(0.1, 1);
            doc["grid"] = grid({-2.0, -2.0}, {2.0, 2.0}, 0.05);
            doc["parameters"] = Json{{"threshold_ratio", 0.5},
                                     {"strength_direction", Json::array({std::cos(pi / 16.0), std::sin(pi / 16.0)})}};
            return doc;
        }
        if (name == "amss")
        {
            Json doc = base(name, 2, "multi-indicator");
            doc["points"] = amss_points();
            doc["sensors"] = Json{{"kind", "far"}, {"angles", uniform_angles(32)}};
            doc["frequencies"] = band(40.0, 200.0, 1.0);
            doc["noise"] = noise(0.1, 1);
            doc["grid"] = grid({-2.5, -1.0}, {2.5, 1.0}, 0.05);
            doc["parameters"] = Json{{"threshold_ratio", 0.5}};
            return doc;
        }
        if (name == "music")
        {
            Json doc = base(name, 2, "music");
            doc["points"] = five_points();
            std::vector<double> angles;
            for (int j = 0; j < 8; ++j)
                angles.push_back(pi * j / 8.0);
            doc["sensors"] = Json{{"kind", "far"}, {"angles", angles}};
            doc["frequencies"] = Json{{"mode", "equidistant"}, {"k_min", pi / 3.0}, {"count", 21}};
            doc["noise"] = noise(0.0, 1);
            doc["grid"] = grid({-1.5, -1.5}, {1.5, 1.5}, 0.05);
            doc["parameters"] = Json{{"m_bound", 8}, {"search_radius", 1.5}, {"threshold_ratio", 0.7}};
            return doc;
        }
        throw Error(Errc::validation, "unknown preset '" + name + "'");
    }
}
