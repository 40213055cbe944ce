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


#include <catch2/catch_amalgamated.hpp>

#include "pointscat/io.hpp"
#include "pointscat/multi_inversion.hpp"

#include <filesystem>
#include <random>
#include <sstream>

using namespace pointscat;

namespace
{
    MeasurementSet sample_far(std::uint64_t seed)
    {
        const PointConfiguration cfg(Dimension(2), {{vec({0.3, -0.2}), Complex(1.0, 0.5)},
                                                    {vec({-0.7, 0.4}), Complex(-0.2, 1.3)}});
        std::vector<Vec> dirs;
        for (int j = 0; j < 6; ++j)
            dirs.push_back(planar_direction(2.0 * pi * j / 6.0 + 0.1));
        const auto clean = forward::simulate(cfg, SensorSet(SensorKind::far, Dimension(2), dirs),
                                             FrequencyGrid::band(40.0, 60.0, 0.5), MeasurementKind::far);
        return forward::add_noise(clean, 0.1, seed);
    }

    MeasurementSet sample_near()
    {
        const PointConfiguration cfg(Dimension(3), {{vec({1.0, 1.0, 1.0}), Complex(1.0, 1.0)}});
        const SensorSet sensors(SensorKind::near, Dimension(3),
                                {vec({2.0, 0.0, 0.0}), vec({0.0, 2.0, 0.0}), vec({0.0, 0.0, 2.0})});
        return forward::simulate(cfg, sensors, FrequencyGrid::equidistant(0.7, 5), MeasurementKind::near);
    }

    bool bitwise_equal(const MeasurementSet &a, const MeasurementSet &b)
    {
        if (a.kind() != b.kind() || a.values().rows() != b.values().rows() || a.values().cols() != b.values().cols())
            return false;
        if (a.freqs().nodes() != b.freqs().nodes() || a.noise_level() != b.noise_level() || a.seed() != b.seed())
            return false;
        for (std::size_t l = 0; l < a.sensors().size(); ++l)
            if (a.sensors().entries()[l] != b.sensors().entries()[l])
                return false;
        return a.values() == b.values();
    }

    std::string parse_error(const std::string &text)
    {
        try
        {
            io::measurement_set(io::parse_text(text, "test"));
        }
        catch (const Error &e)
        {
            CHECK(is_input_error(e.code()));
            return e.what();
        }
        FAIL("expected an error");
        return {};
    }
}

TEST_CASE("IO - Measurement JSON roundtrip is bitwise")
{
    for (std::uint64_t seed : {1u, 2u, 3u})
    {
        const MeasurementSet m = sample_far(seed);
        const std::string text = io::dump(io::to_json(m));
        const MeasurementSet back = io::measurement_set(io::parse_text(text, "roundtrip"));
        CHECK(bitwise_equal(m, back));
        CHECK(io::dump(io::to_json(back)) == text);
    }
    const MeasurementSet near = sample_near();
    CHECK(bitwise_equal(near, io::measurement_set(io::parse_text(io::dump(io::to_json(near)), "near"))));

    const auto dir = std::filesystem::temp_directory_path() / "pointscat_test_io" / "nested";
    std::filesystem::remove_all(dir.parent_path());
    io::write_file(dir / "m.json", io::dump(io::to_json(near)));
    CHECK(bitwise_equal(near, io::measurement_set(io::read_file(dir / "m.json"))));
    std::filesystem::remove_all(dir.parent_path());
}

TEST_CASE("IO - Doubles are written with 17 significant digits")
{
    const double x = 0.1 + 0.2;
    const std::string text = io::dump(io::Json{{"x", x}, {"third", 1.0 / 3.0}, {"n", 3}});
    CHECK(text.find("0.30000000000000004") != std::string::npos);
    CHECK(text.find("0.33333333333333331") != std::string::npos);
    CHECK(io::parse_text(text, "t")["x"].get<double>() == x);
    std::mt19937_64 gen(61);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 200; ++i)
    {
        const double v = u(gen) * std::pow(10.0, double(i % 40) - 20.0);
        CHECK(io::parse_text(io::dump(io::Json{{"v", v}}), "t")["v"].get<double>() == v);
    }
}

TEST_CASE("IO - Corrupt entries name their location")
{
    io::Json doc = io::to_json(sample_far(1));
    const std::size_t cols = doc["freqs"].is_object() ? 41 : 0;
    REQUIRE(cols == 41);

    io::Json bad = doc;
    bad["values"][cols * 2 + 5] = io::Json::array({1.0});
    std::string msg = parse_error(io::dump(bad));
    INFO(msg);
    CHECK(msg.find("$.values[" + std::to_string(cols * 2 + 5) + "]") != std::string::npos);
    CHECK(msg.find("sensor 2") != std::string::npos);
    CHECK(msg.find("node 5") != std::string::npos);

    bad = doc;
    bad["values"][3] = io::Json::array({"a", 1.0});
    msg = parse_error(io::dump(bad));
    CHECK(msg.find("$.values[3]") != std::string::npos);

    bad = doc;
    bad["schema_version"] = 2;
    msg = parse_error(io::dump(bad));
    CHECK(msg.find("schema_version") != std::string::npos);

    bad = doc;
    bad["values"].erase(bad["values"].size() - 1);
    parse_error(io::dump(bad));

    bad = doc;
    bad.erase("sensors");
    msg = parse_error(io::dump(bad));
    CHECK(msg.find("sensors") != std::string::npos);

    bad = doc;
    bad["sensors"][0] = io::Json::array({2.0, 0.0});
    parse_error(io::dump(bad));

    parse_error("{ not json");
    CHECK_THROWS_AS(io::read_file("/nonexistent/pointscat/m.json"), Error);
}

TEST_CASE("IO - CSV layouts")
{
    const MeasurementSet m = sample_near();
    std::istringstream csv(io::to_csv(m));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "sensor_index,k,re,im");
    int rows = 0;
    while (std::getline(csv, line))
    {
        const int l = rows / 5, j = rows % 5;
        std::istringstream fields(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(fields, cell, ','))
            cells.push_back(cell);
        REQUIRE(cells.size() == 4);
        CHECK(std::stoi(cells[0]) == l);
        CHECK(std::stod(cells[1]) == m.freqs().nodes()[std::size_t(j)]);
        CHECK(std::stod(cells[2]) == m.values()(l, j).real());
        CHECK(std::stod(cells[3]) == m.values()(l, j).imag());
        ++rows;
    }
    CHECK(rows == 15);

    const SamplingGrid grid(Dimension(2), vec({0.0, -1.0}), vec({1.0, 1.0}), 0.5);
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = double(i);
    const IndicatorField field(grid, values, IndicatorSource::source_pairs);
    std::istringstream fcsv(io::to_csv(field));
    std::getline(fcsv, line);
    CHECK(line == "x,y,value");
    std::getline(fcsv, line);
    CHECK(line == "0,-1,0");
    std::getline(fcsv, line);
    CHECK(line == "0,-0.5,1");

    const io::Json fj = io::to_json(field);
    CHECK(fj.contains("grid"));
    CHECK(fj["values"].size() == grid.size());
}

TEST_CASE("IO - Result document")
{
    ReconstructionResult r;
    r.locations = {vec({0.5, -0.25})};
    r.strengths = {Complex(1.0, -2.0)};
    r.diagnostics["threshold"] = 0.5;
    r.diagnostic_series["peak_values"] = {3.0, 2.0};
    r.notes.push_back("a note");
    const io::Json j = io::to_json(r);
    CHECK(j["locations"][0][0].get<double>() == 0.5);
    CHECK(j["locations"][0][1].get<double>() == -0.25);
    CHECK(j["strengths"][0][0].get<double>() == 1.0);
    CHECK(j["strengths"][0][1].get<double>() == -2.0);
    CHECK(j["diagnostics"]["threshold"].get<double>() == 0.5);
    CHECK(j["diagnostics"]["peak_values"].size() == 2);
    CHECK(j["diagnostics"]["notes"][0].get<std::string>() == "a note");
}
