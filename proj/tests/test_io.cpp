#include "rainfield/io.hpp"

#include "rainfield/csv.hpp"
#include "rainfield/margins.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace rainfield;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("rainfield_io_" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content) const {
        const auto p = path / name;
        std::ofstream out(p);
        out << content;
        return p.string();
    }
};

}  // namespace

TEST_CASE("load_stations re-centers on the origin") {
    TempDir tmp;
    const auto p = tmp.file("s.csv",
                            "station_id,x_km,y_km\n"
                            "a,0,0\n"
                            "b,10,0\n"
                            "c,0,10\n");
    SUBCASE("origin first: identity") {
        const auto cat = load_stations(p, "a");
        CHECK(cat.origin == 0);
        CHECK(cat.positions(0, 0) == 0.0);
        CHECK(cat.positions(1, 0) == 10.0);
        CHECK(cat.positions(2, 1) == 10.0);
    }
    SUBCASE("origin second: all shifted by (-10, 0)") {
        const auto cat = load_stations(p, "b");
        CHECK(cat.origin == 1);
        CHECK(cat.positions(0, 0) == -10.0);
        CHECK(cat.positions(0, 1) == 0.0);
        CHECK(cat.positions(1, 0) == 0.0);
        CHECK(cat.positions(2, 0) == -10.0);
        CHECK(cat.positions(2, 1) == 10.0);
    }
}

TEST_CASE("load_stations validation failures") {
    TempDir tmp;
    CHECK_THROWS_WITH_AS(
        load_stations(tmp.file("dup.csv", "station_id,x_km,y_km\na,0,0\na,1,0\nc,0,1\n")),
        doctest::Contains("duplicate station id 'a'"), std::runtime_error);
    CHECK_THROWS_WITH_AS(load_stations(tmp.file("two.csv", "station_id,x_km,y_km\na,0,0\nb,1,0\n")),
                         doctest::Contains("at least 3"), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        load_stations(tmp.file("col.csv", "station_id,x_km,y_km\na,0,0\nb,1,1\nc,2,2\nd,3,3\n")),
        doctest::Contains("collinear"), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        load_stations(tmp.file("bad.csv", "station_id,x_km,y_km\na,0,0\nb,x?,0\nc,0,1\n")),
        doctest::Contains("line 3"), std::runtime_error);
    CHECK_THROWS(load_stations(tmp.file("hdr.csv", "id,x,y\na,0,0\nb,1,0\nc,0,1\n")));
    CHECK_THROWS_WITH_AS(
        load_stations(tmp.file("org.csv", "station_id,x_km,y_km\na,0,0\nb,1,0\nc,0,1\n"), "zz"),
        doctest::Contains("'zz' not present"), std::runtime_error);
}

static const char* kStations3 =
    "station_id,x_km,y_km\n"
    "a,0,0\n"
    "b,10,0\n"
    "c,0,10\n";

TEST_CASE("load_rainfall basics") {
    TempDir tmp;
    const auto cat = load_stations(tmp.file("s.csv", kStations3), "a");

    SUBCASE("all zeros") {
        const auto panel = load_rainfall(
            tmp.file("r.csv", "date,a,b,c\n1971-09-01,0,0,0\n1971-09-02,0.0,0,0\n"), cat);
        CHECK(panel.n_days() == 2);
        CHECK(panel.values.maxCoeff() == 0.0);
        CHECK(panel.dates[1] == "1971-09-02");
    }
    SUBCASE("permuted columns are realigned") {
        const auto panel = load_rainfall(
            tmp.file("r.csv", "date,c,a,b\n1971-09-01,3.0,1.0,2.0\n"), cat);
        CHECK(panel.values(0, 0) == 1.0);
        CHECK(panel.values(0, 1) == 2.0);
        CHECK(panel.values(0, 2) == 3.0);
    }
    SUBCASE("negative cell names date and station") {
        CHECK_THROWS_WITH_AS(
            load_rainfall(tmp.file("r.csv", "date,a,b,c\n1971-09-03,0,-1,0\n"), cat),
            doctest::Contains("date 1971-09-03, station b"), std::runtime_error);
    }
    SUBCASE("missing value rejected") {
        CHECK_THROWS(load_rainfall(tmp.file("r.csv", "date,a,b,c\n1971-09-01,1.0,,2.0\n"), cat));
    }
    SUBCASE("unknown station column rejected") {
        CHECK_THROWS_WITH_AS(
            load_rainfall(tmp.file("r.csv", "date,a,b,zz\n1971-09-01,0,0,0\n"), cat),
            doctest::Contains("unknown station column 'zz'"), std::runtime_error);
    }
    SUBCASE("missing station column rejected") {
        CHECK_THROWS(load_rainfall(tmp.file("r.csv", "date,a,b\n1971-09-01,0,0\n"), cat));
    }
}

TEST_CASE("load_triangles basics") {
    TempDir tmp;
    const auto cat = load_stations(tmp.file("s.csv",
                                            "station_id,x_km,y_km\n"
                                            "a,0,0\nb,10,0\nc,0,10\nd,10,10\n"),
                                   "a");
    SUBCASE("single triangle") {
        const auto tris = load_triangles(tmp.file("t.csv", "v1,v2,v3\na,b,c\n"), cat);
        REQUIRE(tris.size() == 1);
        CHECK(tris[0] == Triangle{0, 1, 2});
    }
    SUBCASE("repeated vertex rejected") {
        CHECK_THROWS_WITH_AS(load_triangles(tmp.file("t.csv", "v1,v2,v3\na,a,c\n"), cat),
                             doctest::Contains("repeated vertex"), std::runtime_error);
    }
    SUBCASE("unknown id rejected") {
        CHECK_THROWS_WITH_AS(load_triangles(tmp.file("t.csv", "v1,v2,v3\na,b,zz\n"), cat),
                             doctest::Contains("unknown station 'zz'"), std::runtime_error);
    }
    SUBCASE("two triangles sharing an edge both kept") {
        const auto tris = load_triangles(tmp.file("t.csv", "v1,v2,v3\na,b,c\nb,d,c\n"), cat);
        CHECK(tris.size() == 2);
    }
    SUBCASE("zero-area triangle rejected") {
        const auto cat2 = load_stations(
            tmp.file("s2.csv", "station_id,x_km,y_km\na,0,0\nb,1,1\nc,2,2\nd,0,5\n"), "a");
        CHECK_THROWS_WITH_AS(load_triangles(tmp.file("t.csv", "v1,v2,v3\na,b,c\n"), cat2),
                             doctest::Contains("zero-area"), std::runtime_error);
    }
}

TEST_CASE("write/load round trip is bit exact at gauge resolution") {
    TempDir tmp;
    const auto cat = load_stations(tmp.file("s.csv", kStations3), "b");

    RainPanel panel;
    panel.dates = {"1971-09-01", "1971-09-02", "1971-09-03"};
    panel.values.resize(3, 3);
    panel.values << 0.0, 1.2, 30.7, 0.1, 0.0, 12.5, 99.9, 3.4, 0.2;

    const auto sp = (tmp.path / "out_s.csv").string();
    const auto rp = (tmp.path / "out_r.csv").string();
    write_stations(sp, cat);
    write_rainfall(rp, cat, panel);

    const auto cat2 = load_stations(sp, "b");
    const auto panel2 = load_rainfall(rp, cat2);
    CHECK(cat2.positions == cat.positions);
    CHECK(cat2.ids == cat.ids);
    CHECK(panel2.values == panel.values);
    CHECK(panel2.dates == panel.dates);
}

TEST_CASE("input column order never changes estimates") {
    TempDir tmp;
    const auto cat = load_stations(tmp.file("s.csv", kStations3), "a");
    // deterministic pseudo-rainfall with distinct values
    std::string rain = "date,a,b,c\n", rain_perm = "date,c,a,b\n";
    for (int d = 0; d < 40; ++d) {
        const double va = 0.1 * ((d * 7) % 41), vb = 0.1 * ((d * 11) % 37),
                     vc = 0.1 * ((d * 13) % 43);
        char buf[96];
        std::snprintf(buf, sizeof(buf), "1971-09-%02d,%.1f,%.1f,%.1f\n", d % 28 + 1, va, vb, vc);
        rain += buf;
        std::snprintf(buf, sizeof(buf), "1971-09-%02d,%.1f,%.1f,%.1f\n", d % 28 + 1, vc, va, vb);
        rain_perm += buf;
    }
    const auto p1 = load_rainfall(tmp.file("r1.csv", rain), cat);
    const auto p2 = load_rainfall(tmp.file("r2.csv", rain_perm), cat);
    REQUIRE(p1.values == p2.values);
    const auto f1 = fit_margins(p1, 5);
    const auto f2 = fit_margins(p2, 5);
    CHECK(f1.gamma_pooled == f2.gamma_pooled);
    for (int s = 0; s < 3; ++s) {
        CHECK(f1.stations[s].gamma == f2.stations[s].gamma);
        CHECK(f1.stations[s].scale == f2.stations[s].scale);
        CHECK(f1.stations[s].shift == f2.stations[s].shift);
    }
}
