#pragma once

#include <vector>

namespace darcy {

/// Arithmetic-geometric mean of two positive numbers.
double agm(double a, double b);

/// Jacobi elliptic functions sn, cn, dn for a fixed modulus k (parameter m = k^2),
/// evaluated by the descending Landen / AGM recursion.
class JacobiElliptic {
public:
  struct Values {
    double sn;
    double cn;
    double dn;
  };

  /// 0 <= modulus < 1.
  explicit JacobiElliptic(double modulus);

  [[nodiscard]] double modulus() const { return k_; }
  /// Complete elliptic integral K(k) = pi / (2 agm(1, k')).
  [[nodiscard]] double quarter_period() const { return quarter_period_; }
  [[nodiscard]] int chain_length() const { return static_cast<int>(ratio_.size()) - 1; }

  [[nodiscard]] Values operator()(double x) const;
  [[nodiscard]] double sn(double x) const { return (*this)(x).sn; }
  [[nodiscard]] double cn(double x) const { return (*this)(x).cn; }
  [[nodiscard]] double dn(double x) const { return (*this)(x).dn; }

private:
  double k_;
  double quarter_period_;
  double scale_; // 2^N a_N
  std::vector<double> ratio_; // c_n / a_n for n = 0..N
};

} // namespace darcy
