#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace khoflow {

// Laurent polynomial in one variable with int64 coefficients.
class Laurent {
public:
  Laurent() = default;
  explicit Laurent(std::int64_t c, int power = 0) {
    if (c != 0) coeffs_[power] = c;
  }

  static Laurent monomial(int power, std::int64_t c = 1) { return Laurent(c, power); }

  const std::map<int, std::int64_t>& terms() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  std::int64_t coeff(int power) const {
    auto it = coeffs_.find(power);
    return it == coeffs_.end() ? 0 : it->second;
  }

  void add_term(int power, std::int64_t c) {
    auto it = coeffs_.emplace(power, 0).first;
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }

  Laurent& operator+=(const Laurent& o) {
    for (auto [p, c] : o.coeffs_) add_term(p, c);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (auto [p, c] : o.coeffs_) add_term(p, -c);
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (auto [p, c] : a.coeffs_)
      for (auto [q, d] : b.coeffs_) r.add_term(p + q, c * d);
    return r;
  }

  friend bool operator==(const Laurent& a, const Laurent& b) { return a.coeffs_ == b.coeffs_; }

  // Exact division; throws if the remainder is nonzero.
  Laurent divide_exact(const Laurent& d) const {
    if (d.is_zero()) throw std::domain_error("Laurent: division by zero");
    Laurent rem = *this, quot;
    while (!rem.is_zero()) {
      auto lead_r = std::prev(rem.coeffs_.end());
      auto lead_d = std::prev(d.coeffs_.end());
      if (lead_r->second % lead_d->second != 0)
        throw std::domain_error("Laurent: inexact division");
      std::int64_t c = lead_r->second / lead_d->second;
      int p = lead_r->first - lead_d->first;
      quot.add_term(p, c);
      Laurent t;
      t.coeffs_[p] = c;
      rem -= t * d;
    }
    return quot;
  }

  std::string str(const std::string& var = "q") const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto [p, c] : coeffs_) {
      if (!first) os << (c > 0 ? " + " : " - ");
      else if (c < 0) os << "-";
      std::int64_t a = c > 0 ? c : -c;
      if (a != 1 || p == 0) os << a;
      if (p != 0) {
        if (a != 1) os << "*";
        os << var;
        if (p != 1) os << "^" << p;
      }
      first = false;
    }
    return os.str();
  }

private:
  std::map<int, std::int64_t> coeffs_;  // power -> coefficient, no zero entries
};

}  // namespace khoflow
