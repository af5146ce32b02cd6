#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <iosfwd>
#include <string>

namespace ncg {

/// Arbitrary-precision real; precision is set at runtime (bits of mantissa).
using Real = boost::multiprecision::mpfr_float;

/// Set/read the working precision for newly constructed Real values.
/// Default is 128 bits; the CLI honours the NCGKIT_BITS environment variable.
void set_precision_bits(unsigned bits);
unsigned precision_bits();

namespace detail {
/// Installs the 128-bit default before main() runs, so Real values are never
/// minted under the library backend's own (much lower) startup default.
struct PrecisionBootstrap {
  PrecisionBootstrap() { (void)precision_bits(); }
};
inline const PrecisionBootstrap precision_bootstrap{};
}  // namespace detail

/// RAII: temporarily raise (never lower) the working precision.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

Real pi_value();

/// Complex number over Real.  MPC is not available, so the handful of
/// operations the project needs live here.
struct Complex {
  Real re{0}, im{0};

  Complex() = default;
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(const Real& r) : re(r), im(0) {}
  explicit Complex(double r) : re(r), im(0) {}
  Complex(double r, double i) : re(r), im(i) {}

  Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
  Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
  Complex operator-() const { return {-re, -im}; }
  Complex operator*(const Complex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Complex operator*(const Real& s) const { return {re * s, im * s}; }
  Complex operator/(const Complex& o) const;
  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o) { *this = *this * o; return *this; }

  Complex conj() const { return {re, -im}; }
  Real norm2() const { return re * re + im * im; }
  Real abs() const;
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

Complex operator*(const Real& s, const Complex& z);

/// exp(z) for complex z.
Complex cexp(const Complex& z);
/// e^{i t}.
Complex cis(const Real& t);

std::ostream& operator<<(std::ostream& os, const Complex& z);

/// Deterministic decimal rendering with `digits` significant digits.
std::string real_str(const Real& x, int digits = 20);

}  // namespace ncg
