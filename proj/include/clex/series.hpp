#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace clex {

using Rational = boost::multiprecision::cpp_rational;

enum class SeriesVariable { Activity, Density };

std::string to_string(SeriesVariable v);

template <class T>
inline constexpr bool kExactArithmetic = !std::is_floating_point_v<T>;

// Formal power series truncated after order K, tagged with its variable.
template <class T>
class TruncatedSeries {
 public:
  TruncatedSeries(int order, SeriesVariable var)
      : c_(static_cast<std::size_t>(check_order(order)) + 1, T(0)), var_(var) {}
  TruncatedSeries(std::vector<T> coefficients, SeriesVariable var)
      : c_(std::move(coefficients)), var_(var) {
    if (c_.empty()) throw std::invalid_argument("series needs at least one coefficient");
  }

  static TruncatedSeries identity(int order, SeriesVariable var) {
    TruncatedSeries s(order, var);
    if (order >= 1) s.c_[1] = T(1);
    return s;
  }
  static TruncatedSeries constant(int order, SeriesVariable var, T value) {
    TruncatedSeries s(order, var);
    s.c_[0] = std::move(value);
    return s;
  }

  int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
  SeriesVariable variable() const noexcept { return var_; }
  const std::vector<T>& coefficients() const noexcept { return c_; }
  T& operator[](int n) { return c_.at(static_cast<std::size_t>(n)); }
  const T& operator[](int n) const { return c_.at(static_cast<std::size_t>(n)); }

  TruncatedSeries truncated(int order) const {
    std::vector<T> c(c_.begin(), c_.begin() + std::min(order, this->order()) + 1);
    return {std::move(c), var_};
  }
  TruncatedSeries with_variable(SeriesVariable v) const { return {c_, v}; }

  TruncatedSeries& operator+=(const TruncatedSeries& o) { return combine(o, T(1)); }
  TruncatedSeries& operator-=(const TruncatedSeries& o) { return combine(o, T(-1)); }
  TruncatedSeries& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator-(TruncatedSeries a) { return a *= T(-1); }
  friend TruncatedSeries operator*(TruncatedSeries a, const T& s) { return a *= s; }
  friend TruncatedSeries operator*(const T& s, TruncatedSeries a) { return a *= s; }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_same_variable(a, b);
    const int k = std::min(a.order(), b.order());
    TruncatedSeries out(k, a.var_);
    for (int i = 0; i <= k; ++i) {
      if (a.c_[i] == T(0)) continue;
      for (int j = 0; i + j <= k; ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return out;
  }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

  static void check_same_variable(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.var_ != b.var_) throw std::domain_error("series variables differ");
  }

 private:
  static int check_order(int order) {
    if (order < 0) throw std::invalid_argument("series order must be nonnegative");
    return order;
  }

  TruncatedSeries& combine(const TruncatedSeries& o, const T& sign) {
    check_same_variable(*this, o);
    c_.resize(static_cast<std::size_t>(std::min(order(), o.order())) + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += sign * o.c_[i];
    return *this;
  }

  std::vector<T> c_;
  SeriesVariable var_;
};

template <class T>
TruncatedSeries<T> series_exp(const TruncatedSeries<T>& a) {
  T scale(1);
  if (a[0] != T(0)) {
    if constexpr (kExactArithmetic<T>)
      throw std::domain_error("series_exp needs a zero constant term in exact arithmetic");
    else
      scale = std::exp(a[0]);
  }
  const int k = a.order();
  TruncatedSeries<T> b(k, a.variable());
  b[0] = T(1);
  for (int n = 1; n <= k; ++n) {
    T acc(0);
    for (int j = 1; j <= n; ++j) acc += T(j) * a[j] * b[n - j];
    b[n] = acc / T(n);
  }
  return b * scale;
}

template <class T>
TruncatedSeries<T> series_log(const TruncatedSeries<T>& a) {
  T lead = a[0];
  if constexpr (kExactArithmetic<T>) {
    if (lead != T(1)) throw std::domain_error("series_log needs constant term 1");
  } else {
    if (!(lead > 0.0)) throw std::domain_error("series_log needs a positive constant term");
  }
  const int k = a.order();
  TruncatedSeries<T> b(k, a.variable());
  if constexpr (!kExactArithmetic<T>) b[0] = std::log(lead);
  for (int n = 1; n <= k; ++n) {
    T acc = T(n) * a[n] / lead;
    for (int j = 1; j < n; ++j) acc -= T(j) * b[j] * a[n - j] / lead;
    b[n] = acc / T(n);
  }
  return b;
}

template <class T>
TruncatedSeries<T> series_derivative(const TruncatedSeries<T>& a) {
  const int k = std::max(a.order() - 1, 0);
  TruncatedSeries<T> d(k, a.variable());
  for (int n = 0; n + 1 <= a.order(); ++n) d[n] = T(n + 1) * a[n + 1];
  return d;
}

template <class T>
TruncatedSeries<T> series_reciprocal(const TruncatedSeries<T>& a) {
  if (a[0] == T(0)) throw std::domain_error("series has no reciprocal: zero constant term");
  const int k = a.order();
  TruncatedSeries<T> r(k, a.variable());
  r[0] = T(1) / a[0];
  for (int n = 1; n <= k; ++n) {
    T acc(0);
    for (int j = 1; j <= n; ++j) acc += a[j] * r[n - j];
    r[n] = -acc / a[0];
  }
  return r;
}

// a(b(x)); the result carries b's variable.
template <class T>
TruncatedSeries<T> series_compose(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  if (b[0] != T(0)) throw std::domain_error("inner series of a composition needs zero constant term");
  const int k = std::min(a.order(), b.order());
  TruncatedSeries<T> inner = b.truncated(k);
  TruncatedSeries<T> out = TruncatedSeries<T>::constant(k, b.variable(), a[a.order()]);
  for (int n = a.order() - 1; n >= 0; --n) {
    out = out * inner;
    out[0] += a[n];
  }
  return out;
}

// Pointing: coefficient n becomes n c_n.
template <class T>
TruncatedSeries<T> rooting(const TruncatedSeries<T>& s) {
  TruncatedSeries<T> out(s.order(), s.variable());
  for (int n = 0; n <= s.order(); ++n) out[n] = T(n) * s[n];
  return out;
}

inline SeriesVariable dual(SeriesVariable v) {
  return v == SeriesVariable::Activity ? SeriesVariable::Density : SeriesVariable::Activity;
}

// Compositional inverse by the Lagrange formula [y^n] x = (1/n) [x^{n-1}] (x / y(x))^n.
template <class T>
TruncatedSeries<T> lagrange_invert(const TruncatedSeries<T>& y) {
  if (y[0] != T(0)) throw std::domain_error("not invertible: nonzero constant term");
  if (y.order() < 1 || y[1] == T(0)) throw std::domain_error("not invertible: zero linear term");
  const int k = y.order();
  std::vector<T> shifted(static_cast<std::size_t>(k), T(0));
  for (int n = 1; n <= k; ++n) shifted[n - 1] = y[n];
  const TruncatedSeries<T> h = series_reciprocal(TruncatedSeries<T>(shifted, y.variable()));
  TruncatedSeries<T> out(k, dual(y.variable()));
  TruncatedSeries<T> power = TruncatedSeries<T>::constant(k - 1, y.variable(), T(1));
  for (int n = 1; n <= k; ++n) {
    power = power * h;
    out[n] = power[n - 1] / T(n);
  }
  return out;
}

}  // namespace clex
