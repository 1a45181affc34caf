#include "fracpow/grid.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "fracpow/errors.hpp"

namespace fracpow {

namespace {
constexpr const char* kLayout = "row-major (i2,i1), i1 fastest";
}

void validate(const GridSpec& g) {
  if (!(g.l1 > 0.0 && g.l2 > 0.0)) {
    throw ConfigError("grid side lengths must be positive");
  }
  if (g.N1 < 2 || g.N2 < 2) {
    throw ConfigError("grid needs at least 2 panels per dimension");
  }
}

GridFunction::GridFunction(const GridSpec& grid) : grid_(grid) {
  validate(grid_);
  values_.assign(grid_.size(), 0.0);
}

GridFunction::GridFunction(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  validate(grid_);
  if (values_.size() != grid_.size()) {
    throw ConfigError("value count " + std::to_string(values_.size()) +
                      " does not match interior size " +
                      std::to_string(grid_.size()));
  }
}

GridFunction GridFunction::sample(
    const GridSpec& grid, const std::function<double(double, double)>& f) {
  GridFunction u(grid);
  for (int i2 = 1; i2 <= grid.n2(); ++i2) {
    const double x2 = grid.x2(i2);
    for (int i1 = 1; i1 <= grid.n1(); ++i1) {
      u.at(i1, i2) = f(grid.x1(i1), x2);
    }
  }
  return u;
}

double inner(const GridFunction& u, const GridFunction& v) {
  if (!(u.grid() == v.grid())) {
    throw ConfigError("inner(): grid mismatch");
  }
  double acc = 0.0;
  const double* a = u.data();
  const double* b = v.data();
  for (std::size_t i = 0; i < u.size(); ++i) acc += a[i] * b[i];
  return u.grid().h1() * u.grid().h2() * acc;
}

double norm2(const GridFunction& u) { return std::sqrt(inner(u, u)); }

double norm_inf(const GridFunction& u) {
  double m = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    m = std::max(m, std::abs(u.data()[i]));
  return m;
}

void save(const GridFunction& u, const std::filesystem::path& data_path,
          DumpFormat format) {
  {
    std::ofstream os(data_path,
                     format == DumpFormat::binary
                         ? std::ios::binary | std::ios::trunc
                         : std::ios::trunc);
    if (!os) throw IoError("cannot open " + data_path.string() + " for write");
    if (format == DumpFormat::csv) {
      char buf[64];
      for (std::size_t i = 0; i < u.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g\n", u.data()[i]);
        os << buf;
      }
    } else {
      os.write(reinterpret_cast<const char*>(u.data()),
               static_cast<std::streamsize>(u.size() * sizeof(double)));
    }
    if (!os) throw IoError("write failed: " + data_path.string());
  }

  nlohmann::json header;
  header["l1"] = u.grid().l1;
  header["l2"] = u.grid().l2;
  header["N1"] = u.grid().N1;
  header["N2"] = u.grid().N2;
  header["layout"] = kLayout;
  header["format"] = format == DumpFormat::csv ? "csv" : "binary";
  const std::filesystem::path header_path =
      data_path.string() + std::string(".json");
  std::ofstream hs(header_path, std::ios::trunc);
  if (!hs) throw IoError("cannot open " + header_path.string() + " for write");
  hs << header.dump(2) << "\n";
  if (!hs) throw IoError("write failed: " + header_path.string());
}

GridFunction load(const std::filesystem::path& data_path) {
  const std::filesystem::path header_path =
      data_path.string() + std::string(".json");
  std::ifstream hs(header_path);
  if (!hs) throw IoError("cannot open header " + header_path.string());
  nlohmann::json header;
  try {
    hs >> header;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad header " + header_path.string() + ": " + e.what());
  }

  GridSpec grid;
  std::string format;
  try {
    grid.l1 = header.at("l1").get<double>();
    grid.l2 = header.at("l2").get<double>();
    grid.N1 = header.at("N1").get<int>();
    grid.N2 = header.at("N2").get<int>();
    format = header.at("format").get<std::string>();
    if (header.at("layout").get<std::string>() != kLayout) {
      throw IoError("unsupported layout in " + header_path.string());
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad header " + header_path.string() + ": " + e.what());
  }
  validate(grid);

  std::vector<double> values;
  values.reserve(grid.size());
  if (format == "csv") {
    std::ifstream is(data_path);
    if (!is) throw IoError("cannot open " + data_path.string());
    double v = 0.0;
    while (is >> v) values.push_back(v);
  } else if (format == "binary") {
    std::ifstream is(data_path, std::ios::binary);
    if (!is) throw IoError("cannot open " + data_path.string());
    values.resize(grid.size());
    is.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
    if (static_cast<std::size_t>(is.gcount()) !=
        values.size() * sizeof(double)) {
      throw IoError("short read: " + data_path.string());
    }
  } else {
    throw IoError("unknown format '" + format + "' in " +
                  header_path.string());
  }
  if (values.size() != grid.size()) {
    throw IoError("value count in " + data_path.string() +
                  " does not match header dimensions");
  }
  return GridFunction(grid, std::move(values));
}

}  // namespace fracpow
