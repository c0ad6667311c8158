#include "doctest.h"
#include "photondm/errors.hpp"
#include "photondm/feasibility.hpp"
#include "photondm/io.hpp"
#include "photondm/rng.hpp"
#include "photondm/sampling.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace photondm;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct temp_dir {
    std::filesystem::path path;
    temp_dir() {
        path = std::filesystem::temp_directory_path() /
               ("photondm_io_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        std::filesystem::create_directories(path);
    }
    ~temp_dir() { std::filesystem::remove_all(path); }
    static int& counter() {
        static int value = 0;
        return value;
    }
};

}  // namespace

TEST_CASE("format_double round-trips arbitrary doubles through text") {
    Engine engine = make_engine(2024);
    for (int i = 0; i < 2000; ++i) {
        double scale = std::pow(10.0, 40.0 * uniform_unit(engine) - 20.0);
        double value = (uniform_unit(engine) - 0.5) * scale;
        std::string text = format_double(value);
        double parsed = std::strtod(text.c_str(), nullptr);
        CHECK(parsed == value);
    }
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("format_double uses fixed tokens for non-finite values") {
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("format_ratio prints inf for the unbounded marker") {
    CHECK(format_ratio(AsymmetryRatio::finite(4.0)) == "4");
    CHECK(format_ratio(AsymmetryRatio::infinite()) == "inf");
}

TEST_CASE("atomic text write creates and replaces files without leaving temps") {
    temp_dir dir;
    auto target = (dir.path / "out.txt").string();

    write_text_file_atomic(target, "first\n");
    CHECK(slurp(target) == "first\n");

    write_text_file_atomic(target, "second\n");
    CHECK(slurp(target) == "second\n");

    int entries = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir.path)) {
        (void)entry;
        ++entries;
    }
    CHECK(entries == 1);
}

TEST_CASE("uncommitted atomic writer leaves no trace") {
    temp_dir dir;
    auto target = (dir.path / "never.txt").string();
    {
        AtomicFileWriter writer(target);
        writer.stream() << "discarded";
    }
    CHECK(!std::filesystem::exists(target));
    CHECK(std::filesystem::is_empty(dir.path));
}

TEST_CASE("atomic writer reports unwritable destinations") {
    CHECK_THROWS_AS(write_text_file_atomic("/nonexistent_photondm_dir/file.txt", "x"),
                    io_error);
}

TEST_CASE("sweep csv carries the pinned header and full-precision rows") {
    std::vector<SweepRow> rows = {
        {0.25, 0.0625, 0.6875, 0.0, 0.25},
        {0.1, 0.2, 0.7, 0.0, 2.0},
    };
    std::ostringstream out;
    write_sweep_csv(out, rows);

    std::istringstream lines(out.str());
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "p12,p21,loss,conflict,ratio");
    REQUIRE(std::getline(lines, line));
    CHECK(line == "0.25,0.0625,0.6875,0,0.25");
    REQUIRE(std::getline(lines, line));
    CHECK(line == "0.1,0.2,0.7,0,2");
    CHECK(!std::getline(lines, line));
}

TEST_CASE("frontier csv mirrors rows exactly including inf tokens") {
    std::vector<FrontierRow> rows = {
        {0.0, AsymmetryRatio::infinite(), AsymmetryRatio::finite(1.0)},
        {0.375, AsymmetryRatio::finite(4.0), AsymmetryRatio::finite(0.25)},
    };
    std::ostringstream out;
    write_frontier_csv(out, rows);

    std::istringstream lines(out.str());
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "x,y_upper,y_lower");
    REQUIRE(std::getline(lines, line));
    CHECK(line == "0,inf,1");
    REQUIRE(std::getline(lines, line));
    CHECK(line == "0.375,4,0.25");
}

TEST_CASE("csv round-trip preserves sweep values bit-for-bit") {
    temp_dir dir;
    auto target = dir.path / "roundtrip.csv";

    auto rows = run_sweep(SystemId::oam, 64, 31415, 1);
    {
        AtomicFileWriter writer(target.string());
        write_sweep_csv(writer.stream(), rows);
        writer.commit();
    }

    std::ifstream in(target);
    std::string line;
    REQUIRE(std::getline(in, line));  // header
    std::size_t index = 0;
    while (std::getline(in, line)) {
        REQUIRE(index < rows.size());
        std::istringstream fields(line);
        std::string field;
        std::vector<double> values;
        while (std::getline(fields, field, ',')) {
            values.push_back(std::strtod(field.c_str(), nullptr));
        }
        REQUIRE(values.size() == 5);
        CHECK(values[0] == rows[index].p12);
        CHECK(values[1] == rows[index].p21);
        CHECK(values[2] == rows[index].loss);
        CHECK(values[3] == rows[index].conflict);
        CHECK(values[4] == rows[index].ratio);
        ++index;
    }
    CHECK(index == rows.size());
}
