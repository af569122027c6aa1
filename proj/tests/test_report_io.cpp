#include "rainfield/report_io.hpp"

#include "rainfield/csv.hpp"
#include "rainfield/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rainfield;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("rainfield_rep_" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

StationCatalog tiny_catalog() {
    StationCatalog cat;
    cat.ids = {"a", "b", "c"};
    cat.positions.resize(3, 2);
    cat.positions << 0, 0, 3, 4, -2, 1;
    cat.origin = 0;
    return cat;
}

}  // namespace

TEST_CASE("margins.csv carries the pinned header and pooled-gamma comment") {
    TempDir tmp;
    MarginalFit fit;
    fit.k = 125;
    fit.gamma_pooled = 0.1082;
    fit.stations = {{0.1, 5.0, 10.0}, {0.12, 6.0, 11.0}, {0.1046, 5.5, 10.5}};
    const auto p = tmp.file("margins.csv");
    write_margins_csv(p, tiny_catalog(), fit);
    const std::string text = slurp(p);
    CHECK(text.rfind("station_id,gamma_local,scale_mm,shift_mm,k\n", 0) == 0);
    CHECK(text.find("a,0.1,5,10,125\n") != std::string::npos);
    CHECK(text.find("# gamma_pooled=0.1082\n") != std::string::npos);
}

TEST_CASE("pairs.csv marks exclusions and writes the summary comment") {
    TempDir tmp;
    DependenceFit fit;
    fit.pairs.push_back({0, 1, 7.0, 1.4, 0.052, 125});
    fit.pairs.push_back({0, 2, 3.0, 2.0, std::nullopt, 125});
    fit.pairs.push_back({1, 2, 8.0, 1.5, 0.047, 125});
    fit.beta_hat = 0.0495;
    fit.beta_q25 = 0.047;
    fit.beta_q75 = 0.052;
    fit.n_excluded = 1;
    const auto p = tmp.file("pairs.csv");
    write_pairs_csv(p, tiny_catalog(), fit);
    const std::string text = slurp(p);
    CHECK(text.rfind("p_id,q_id,h_km,l11,beta_pq,included\n", 0) == 0);
    CHECK(text.find("a,c,3.000000,2,,0\n") != std::string::npos);
    CHECK(text.find("b,c,8.000000,1.5,0.047,1\n") != std::string::npos);
    CHECK(text.find("# beta_hat=0.0495 q25=0.047 q75=0.052 n_excluded=1\n") !=
          std::string::npos);
}

TEST_CASE("totals.csv round-trips through the reader") {
    TempDir tmp;
    const std::vector<DayRecord> recs{{0, 17, 3.25, 1456.5, 2, 5}, {1, 4, 0.0, 0.0, 0, 0}};
    const auto p = tmp.file("totals.csv");
    write_totals_csv(p, recs);
    const auto back = read_totals_csv(p);
    REQUIRE(back.size() == 2);
    CHECK(back[0].sim_index == 0);
    CHECK(back[0].source_day == 17);
    CHECK(back[0].areal_avg == 3.25);
    CHECK(back[0].total == 1456.5);
    CHECK(back[0].n_extreme_stations == 2);
    CHECK(back[0].n_extreme_triangles == 5);
    CHECK(back[1].areal_avg == 0.0);
    CHECK_THROWS(read_totals_csv(tmp.file("missing.csv")));
}

TEST_CASE("quantiles and histogram files carry the pinned headers") {
    TempDir tmp;
    write_quantiles_csv(tmp.file("q.csv"), {58.8, 61.2});
    const std::string q = slurp(tmp.file("q.csv"));
    CHECK(q == "replicate,quantile_mm\n0,58.800000\n1,61.200000\n");

    write_hist_csv(tmp.file("h.csv"), {{58.0, 59.0, 3}, {59.0, 60.0, 0}});
    const std::string h = slurp(tmp.file("h.csv"));
    CHECK(h ==
          "bin_left_mm,bin_right_mm,count\n58.000000,59.000000,3\n59.000000,60.000000,0\n");
}

TEST_CASE("stations default origin is the most central station") {
    TempDir tmp;
    {
        std::ofstream out(tmp.file("s.csv"));
        out << "station_id,x_km,y_km\nfar,100,100\nmid,1,1\ncorner,0,0\nother,2,0\n";
    }
    const auto cat = load_stations(tmp.file("s.csv"));
    CHECK(cat.ids[cat.origin] == "mid");
    CHECK(cat.positions(cat.origin, 0) == 0.0);
    CHECK(cat.positions(cat.origin, 1) == 0.0);
}
