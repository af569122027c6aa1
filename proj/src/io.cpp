#include "rainfield/io.hpp"

#include "rainfield/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rainfield {

std::vector<CsvRow> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::vector<CsvRow> rows;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        rows.push_back({lineno, split_fields(line)});
    }
    return rows;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    for (auto& f : out) {
        while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.erase(f.begin());
        while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) f.pop_back();
    }
    return out;
}

double parse_double(const std::string& s, const std::string& context) {
    if (s.empty()) throw std::runtime_error("missing value: " + context);
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error("unparsable number '" + s + "': " + context);
    }
    if (pos != s.size()) throw std::runtime_error("unparsable number '" + s + "': " + context);
    if (!std::isfinite(v)) throw std::runtime_error("non-finite value '" + s + "': " + context);
    return v;
}

std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void expect_header(const CsvRow& row, const std::vector<std::string>& expected,
                   const std::string& path) {
    if (row.fields != expected) {
        std::string want;
        for (std::size_t i = 0; i < expected.size(); ++i)
            want += (i ? "," : "") + expected[i];
        throw std::runtime_error(path + ": expected header '" + want + "'");
    }
}

bool all_collinear(const PointMatrix& pts) {
    const Vec2 a = pts.row(0).transpose();
    int ref = -1;
    for (int i = 1; i < pts.rows(); ++i) {
        if ((pts.row(i).transpose() - a).norm() > 1e-12) {
            ref = i;
            break;
        }
    }
    if (ref < 0) return true;  // all coincident
    const Vec2 d = pts.row(ref).transpose() - a;
    for (int i = 1; i < pts.rows(); ++i) {
        const Vec2 e = pts.row(i).transpose() - a;
        if (std::abs(d.x() * e.y() - d.y() * e.x()) > 1e-9) return false;
    }
    return true;
}

}  // namespace

StationCatalog load_stations(const std::string& path, const std::string& origin_id) {
    auto rows = read_csv(path);
    if (rows.empty()) throw std::runtime_error(path + ": empty file");
    expect_header(rows[0], {"station_id", "x_km", "y_km"}, path);

    StationCatalog cat;
    std::set<std::string> seen;
    cat.positions.resize(static_cast<long>(rows.size()) - 1, 2);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != 3)
            throw std::runtime_error(path + " line " + std::to_string(row.line) +
                                     ": expected 3 fields");
        const std::string& id = row.fields[0];
        if (id.empty())
            throw std::runtime_error(path + " line " + std::to_string(row.line) + ": empty id");
        if (!seen.insert(id).second)
            throw std::runtime_error(path + " line " + std::to_string(row.line) +
                                     ": duplicate station id '" + id + "'");
        const std::string ctx = path + " line " + std::to_string(row.line);
        cat.positions(static_cast<long>(r) - 1, 0) = parse_double(row.fields[1], ctx);
        cat.positions(static_cast<long>(r) - 1, 1) = parse_double(row.fields[2], ctx);
        cat.ids.push_back(id);
    }
    if (cat.size() < 3) throw std::runtime_error(path + ": need at least 3 stations");
    if (all_collinear(cat.positions)) throw std::runtime_error(path + ": stations are collinear");

    if (origin_id.empty()) {
        const Vec2 centroid = cat.positions.colwise().mean().transpose();
        int best = 0;
        double bd = (cat.position(0) - centroid).squaredNorm();
        for (int i = 1; i < cat.size(); ++i) {
            const double d = (cat.position(i) - centroid).squaredNorm();
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        cat.origin = best;
    } else {
        cat.origin = cat.index_of(origin_id);
        if (cat.origin < 0)
            throw std::runtime_error(path + ": origin station '" + origin_id + "' not present");
    }
    const Eigen::RowVector2d shift = cat.positions.row(cat.origin);
    cat.positions.rowwise() -= shift;
    return cat;
}

RainPanel load_rainfall(const std::string& path, const StationCatalog& catalog) {
    auto rows = read_csv(path);
    if (rows.empty()) throw std::runtime_error(path + ": empty file");
    const auto& head = rows[0].fields;
    if (head.empty() || head[0] != "date")
        throw std::runtime_error(path + ": first header field must be 'date'");
    if (static_cast<int>(head.size()) - 1 != catalog.size())
        throw std::runtime_error(path + ": expected " + std::to_string(catalog.size()) +
                                 " station columns, got " + std::to_string(head.size() - 1));

    // column position of each catalog station in this file
    std::vector<int> col_of(catalog.size(), -1);
    for (std::size_t c = 1; c < head.size(); ++c) {
        const int s = catalog.index_of(head[c]);
        if (s < 0)
            throw std::runtime_error(path + ": unknown station column '" + head[c] + "'");
        if (col_of[s] != -1)
            throw std::runtime_error(path + ": duplicate station column '" + head[c] + "'");
        col_of[s] = static_cast<int>(c);
    }

    RainPanel panel;
    panel.values.resize(static_cast<long>(rows.size()) - 1, catalog.size());
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != head.size())
            throw std::runtime_error(path + " line " + std::to_string(row.line) +
                                     ": expected " + std::to_string(head.size()) + " fields");
        const std::string& date = row.fields[0];
        if (date.empty())
            throw std::runtime_error(path + " line " + std::to_string(row.line) + ": empty date");
        for (int s = 0; s < catalog.size(); ++s) {
            const std::string ctx = "date " + date + ", station " + catalog.ids[s];
            const double v = parse_double(row.fields[col_of[s]], ctx);
            if (v < 0)
                throw std::runtime_error(path + ": negative rainfall (" + ctx + ")");
            panel.values(static_cast<long>(r) - 1, s) = v;
        }
        panel.dates.push_back(date);
    }
    return panel;
}

std::vector<Triangle> load_triangles(const std::string& path, const StationCatalog& catalog) {
    auto rows = read_csv(path);
    if (rows.empty()) throw std::runtime_error(path + ": empty file");
    expect_header(rows[0], {"v1", "v2", "v3"}, path);

    std::vector<Triangle> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != 3)
            throw std::runtime_error(path + " line " + std::to_string(row.line) +
                                     ": expected 3 fields");
        Triangle t;
        for (int j = 0; j < 3; ++j) {
            t[j] = catalog.index_of(row.fields[j]);
            if (t[j] < 0)
                throw std::runtime_error(path + " line " + std::to_string(row.line) +
                                         ": unknown station '" + row.fields[j] + "'");
        }
        if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2])
            throw std::runtime_error(path + " line " + std::to_string(row.line) +
                                     ": repeated vertex in triangle");
        const Vec2 a = catalog.position(t[0]);
        const Vec2 b = catalog.position(t[1]);
        const Vec2 c = catalog.position(t[2]);
        const double area2 = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
        if (std::abs(area2) < 1e-12)
            throw std::runtime_error(path + " line " + std::to_string(row.line) +
                                     ": zero-area triangle");
        out.push_back(t);
    }
    return out;
}

void write_stations(const std::string& path, const StationCatalog& catalog) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "station_id,x_km,y_km\n";
    for (int i = 0; i < catalog.size(); ++i)
        out << catalog.ids[i] << ',' << format_fixed(catalog.positions(i, 0), 6) << ','
            << format_fixed(catalog.positions(i, 1), 6) << '\n';
}

void write_rainfall(const std::string& path, const StationCatalog& catalog,
                    const RainPanel& panel) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "date";
    for (const auto& id : catalog.ids) out << ',' << id;
    out << '\n';
    for (long d = 0; d < panel.n_days(); ++d) {
        out << panel.dates[d];
        for (int s = 0; s < panel.n_stations(); ++s)
            out << ',' << format_fixed(panel.values(d, s), 1);
        out << '\n';
    }
}

void write_triangles(const std::string& path, const StationCatalog& catalog,
                     const std::vector<Triangle>& triangles) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "v1,v2,v3\n";
    for (const auto& t : triangles)
        out << catalog.ids[t[0]] << ',' << catalog.ids[t[1]] << ',' << catalog.ids[t[2]] << '\n';
}

}  // namespace rainfield
