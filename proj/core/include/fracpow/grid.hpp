#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <vector>

namespace fracpow {

/// Uniform tensor grid on the rectangle (0,l1) x (0,l2) with N1 x N2
/// panels. Grid nodes are x1_i = i*h1, x2_j = j*h2; only the
/// (N1-1) x (N2-1) interior nodes carry unknowns (homogeneous Dirichlet
/// boundary).
struct GridSpec {
  double l1 = 1.0;
  double l2 = 1.0;
  int N1 = 2;
  int N2 = 2;

  double h1() const { return l1 / N1; }
  double h2() const { return l2 / N2; }
  int n1() const { return N1 - 1; }  ///< interior nodes along x1
  int n2() const { return N2 - 1; }  ///< interior nodes along x2
  std::size_t size() const {
    return static_cast<std::size_t>(n1()) * static_cast<std::size_t>(n2());
  }
  double x1(int i1) const { return i1 * h1(); }  ///< node coordinate, i1 = 0..N1
  double x2(int i2) const { return i2 * h2(); }

  bool operator==(const GridSpec&) const = default;
};

/// Throws ConfigError unless l1, l2 > 0 and N1, N2 >= 2.
void validate(const GridSpec& g);

/// Values at the interior grid nodes, stored row-major as (i2, i1) with
/// i1 fastest: linear index = (i2-1)*n1 + (i1-1) for interior indices
/// i1 = 1..N1-1, i2 = 1..N2-1.
class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(const GridSpec& grid);
  GridFunction(const GridSpec& grid, std::vector<double> values);

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  /// Access by interior node indices i1 = 1..N1-1, i2 = 1..N2-1.
  double& at(int i1, int i2) {
    return values_[static_cast<std::size_t>(i2 - 1) * grid_.n1() + (i1 - 1)];
  }
  double at(int i1, int i2) const {
    return values_[static_cast<std::size_t>(i2 - 1) * grid_.n1() + (i1 - 1)];
  }

  /// Sample a function of the node coordinates (x1, x2) on the interior.
  static GridFunction sample(const GridSpec& grid,
                             const std::function<double(double, double)>& f);

 private:
  GridSpec grid_{};
  std::vector<double> values_;
};

/// Discrete L2 inner product: h1*h2 * sum_i u_i v_i.
/// Throws ConfigError if the grids differ.
double inner(const GridFunction& u, const GridFunction& v);

/// Norm induced by inner().
double norm2(const GridFunction& u);

/// Plain max-abs over interior nodes.
double norm_inf(const GridFunction& u);

/// On-disk value layout for save()/load().
enum class DumpFormat {
  csv,    ///< one value per line, printf %.17g (lossless round trip)
  binary  ///< raw little-endian doubles in storage order
};

/// Writes the K interior values to `data_path` in the given format and a
/// JSON sidecar header to `data_path + ".json"` recording
/// {l1, l2, N1, N2, layout, format} so the file is self-describing.
void save(const GridFunction& u, const std::filesystem::path& data_path,
          DumpFormat format = DumpFormat::csv);

/// Reconstructs a grid function from a data file written by save(),
/// using its JSON sidecar. Throws IoError on missing/inconsistent files.
GridFunction load(const std::filesystem::path& data_path);

}  // namespace fracpow
