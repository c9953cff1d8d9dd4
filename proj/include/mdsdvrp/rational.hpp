#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mdsdvrp {

// Exact rational on int64 with 128-bit cross-multiplied comparisons.
// Used for gammas, claimed ratios, epsilon arithmetic and certificate
// bounds; never for edge costs (those are fixed-point integers).
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n) : num(n), den(1) {}
  Rat(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("Rat: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    if (num == 0) den = 1;
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return Rat(a.num * b.num, a.den * b.den);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) throw std::domain_error("Rat: division by zero");
    return Rat(a.num * b.den, a.den * b.num);
  }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return (__int128)a.num * b.den < (__int128)b.num * a.den;
  }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  long long floor_ll() const {
    long long q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
  }
  long long ceil_ll() const {
    long long q = num / den;
    if (num % den != 0 && num > 0) ++q;
    return q;
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

// a <= r * b without overflow on the product (a, b >= 0 fixed-point values).
inline bool le_scaled(long long a, const Rat& r, long long b) {
  return (__int128)a * r.den <= (__int128)r.num * b;
}

// Parses "3", "3/4" or a decimal like "0.25" into an exact rational.
inline Rat parse_rat(const std::string& s) {
  auto bad = [&] { return std::invalid_argument("not a rational: '" + s + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    long long n = std::stoll(s.substr(0, slash));
    long long d = std::stoll(s.substr(slash + 1));
    return Rat(n, d);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rat(std::stoll(s));
  std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
  if (fp.empty() || fp.size() > 18) throw bad();
  bool neg = !ip.empty() && ip[0] == '-';
  long long whole = ip.empty() || ip == "-" ? 0 : std::stoll(ip);
  long long den = 1;
  for (size_t i = 0; i < fp.size(); ++i) den *= 10;
  long long frac = std::stoll(fp);
  if (frac < 0) throw bad();
  long long n = (whole < 0 || neg ? whole * den - frac : whole * den + frac);
  return Rat(n, den);
}

}  // namespace mdsdvrp
