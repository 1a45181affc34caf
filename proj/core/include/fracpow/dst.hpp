#pragma once

#include <memory>
#include <vector>

#include "fracpow/grid.hpp"

namespace fracpow {

/// Two-dimensional discrete sine transform (DST-I) on the
/// (N1-1) x (N2-1) interior of a grid, the eigenbasis of the constant-
/// coefficient five-point operator with Dirichlet boundary.
///
/// forward() is the unnormalized transform (applying it twice multiplies
/// by 2*N1 * 2*N2); inverse() folds that factor in, so
/// inverse(forward(u)) == u up to roundoff. Transforms work on internal
/// buffers, so a const instance may not be shared across threads without
/// external locking; construct one per thread instead (plan creation is
/// internally serialized, as the planner is not thread-safe).
class SineTransform2D {
 public:
  SineTransform2D(int N1, int N2);
  explicit SineTransform2D(const GridSpec& grid);
  ~SineTransform2D();

  SineTransform2D(const SineTransform2D&) = delete;
  SineTransform2D& operator=(const SineTransform2D&) = delete;

  int N1() const { return N1_; }
  int N2() const { return N2_; }
  std::size_t size() const {
    return static_cast<std::size_t>(N1_ - 1) * (N2_ - 1);
  }

  /// in/out: size() values in GridFunction storage order ((i2,i1), i1
  /// fastest). in == out is allowed.
  void forward(const double* in, double* out) const;
  void inverse(const double* in, double* out) const;

  void forward(const std::vector<double>& in, std::vector<double>& out) const;
  void inverse(const std::vector<double>& in, std::vector<double>& out) const;

 private:
  struct Impl;
  int N1_ = 0;
  int N2_ = 0;
  std::unique_ptr<Impl> impl_;
};

/// Dirichlet eigenvalues of the discretized 1D second-difference
/// operator on (0,l) with N panels:
///   lambda_k = (4/h^2) sin^2(k pi h / (2 l)),  k = 1..N-1,  h = l/N.
std::vector<double> laplace_eigenvalues_1d(double l, int N);

}  // namespace fracpow
