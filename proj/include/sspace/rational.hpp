#ifndef SSPACE_RATIONAL_HPP
#define SSPACE_RATIONAL_HPP

#include <compare>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "sspace/error.hpp"

namespace sspace {

// Nonnegative rational number or +infinity, with exact arithmetic.
class ExtRational {
 public:
  using Finite = boost::multiprecision::cpp_rational;

  ExtRational() = default;
  ExtRational(long long v) : ExtRational(Finite(v)) {}  // NOLINT(google-explicit-constructor)
  explicit ExtRational(Finite v) : value_(std::move(v)) {
    if (value_ < 0) throw Error(Errc::InvalidRational, "measure values must be nonnegative");
  }

  static ExtRational infinity() {
    ExtRational r;
    r.infinite_ = true;
    return r;
  }

  // Accepts "p/q", "p" or "inf".
  static ExtRational parse(std::string_view text) {
    std::string s(text);
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    if (s == "inf") return infinity();
    if (s.empty() || s.find_first_not_of("0123456789/") != std::string::npos || s.front() == '/' || s.back() == '/' ||
        s.find('/') != s.rfind('/'))
      throw Error(Errc::InvalidRational, "not a nonnegative rational: '" + std::string(text) + "'", {std::string(text)});
    auto slash = s.find('/');
    if (slash != std::string::npos && s.find_first_not_of('0', slash + 1) == std::string::npos)
      throw Error(Errc::InvalidRational, "zero denominator in '" + std::string(text) + "'", {std::string(text)});
    return ExtRational(Finite(s));
  }

  bool is_infinite() const { return infinite_; }
  bool is_zero() const { return !infinite_ && value_ == 0; }
  bool is_positive() const { return infinite_ || value_ > 0; }
  const Finite& finite_value() const { return value_; }

  std::string str() const {
    if (infinite_) return "inf";
    return value_.str();
  }

  ExtRational& operator+=(const ExtRational& o) {
    if (o.infinite_) infinite_ = true;
    if (!infinite_) value_ += o.value_;
    return *this;
  }
  friend ExtRational operator+(ExtRational a, const ExtRational& b) { return a += b; }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Finite value_ = 0;
  bool infinite_ = false;
};

}  // namespace sspace

#endif  // SSPACE_RATIONAL_HPP
