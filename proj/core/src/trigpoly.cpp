#include "tonguelock/trigpoly.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace tonguelock {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double parse_number(const std::string& tok, std::string_view whole) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad coefficient '" + tok + "' in trig poly '" +
                                std::string(whole) + "'");
  }
  while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
  if (pos != tok.size())
    throw std::invalid_argument("bad coefficient '" + tok + "' in trig poly '" +
                                std::string(whole) + "'");
  return v;
}
}  // namespace

TrigPoly::TrigPoly(double constant, std::vector<double> cos_coeffs,
                   std::vector<double> sin_coeffs)
    : constant_(constant), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
  if (cos_.size() < sin_.size()) cos_.resize(sin_.size(), 0.0);
  if (sin_.size() < cos_.size()) sin_.resize(cos_.size(), 0.0);
}

TrigPoly TrigPoly::cosine(int k, double amplitude) {
  if (k < 1) throw std::invalid_argument("cosine mode must be >= 1");
  std::vector<double> a(static_cast<std::size_t>(k), 0.0);
  std::vector<double> b(static_cast<std::size_t>(k), 0.0);
  a.back() = amplitude;
  return {0.0, std::move(a), std::move(b)};
}

TrigPoly TrigPoly::sine(int k, double amplitude) {
  if (k < 1) throw std::invalid_argument("sine mode must be >= 1");
  std::vector<double> a(static_cast<std::size_t>(k), 0.0);
  std::vector<double> b(static_cast<std::size_t>(k), 0.0);
  b.back() = amplitude;
  return {0.0, std::move(a), std::move(b)};
}

TrigPoly TrigPoly::parse(std::string_view text) {
  std::vector<std::string> groups;
  std::string cur;
  for (char c : text) {
    if (c == ';') {
      groups.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  groups.push_back(cur);
  if (groups.empty()) throw std::invalid_argument("empty trig poly");

  double constant = parse_number(groups[0], text);
  std::vector<double> a, b;
  for (std::size_t k = 1; k < groups.size(); ++k) {
    const std::string& g = groups[k];
    auto comma = g.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("mode " + std::to_string(k) +
                                  " needs 'a,b' in trig poly '" + std::string(text) + "'");
    a.push_back(parse_number(g.substr(0, comma), text));
    b.push_back(parse_number(g.substr(comma + 1), text));
  }
  TrigPoly p(constant, std::move(a), std::move(b));
  p.trim();
  return p;
}

std::string TrigPoly::format() const {
  std::ostringstream out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", constant_);
  out << buf;
  for (std::size_t k = 0; k < cos_.size(); ++k) {
    std::snprintf(buf, sizeof buf, "; %.17g,%.17g", cos_[k], sin_[k]);
    out << buf;
  }
  return out.str();
}

double TrigPoly::operator()(double t) const {
  double v = constant_;
  for (std::size_t k = 0; k < cos_.size(); ++k) {
    const double arg = kTwoPi * static_cast<double>(k + 1) * t;
    v += cos_[k] * std::cos(arg) + sin_[k] * std::sin(arg);
  }
  return v;
}

double TrigPoly::derivative(double t) const {
  double v = 0.0;
  for (std::size_t k = 0; k < cos_.size(); ++k) {
    const double w = kTwoPi * static_cast<double>(k + 1);
    const double arg = w * t;
    v += w * (-cos_[k] * std::sin(arg) + sin_[k] * std::cos(arg));
  }
  return v;
}

double TrigPoly::amplitude_l1() const {
  double s = 0.0;
  for (std::size_t k = 0; k < cos_.size(); ++k)
    s += std::abs(cos_[k]) + std::abs(sin_[k]);
  return s;
}

double TrigPoly::sup_bound() const { return std::abs(constant_) + amplitude_l1(); }

double TrigPoly::derivative_sup_bound() const {
  double s = 0.0;
  for (std::size_t k = 0; k < cos_.size(); ++k)
    s += kTwoPi * static_cast<double>(k + 1) * (std::abs(cos_[k]) + std::abs(sin_[k]));
  return s;
}

double TrigPoly::second_derivative_sup_bound() const {
  double s = 0.0;
  for (std::size_t k = 0; k < cos_.size(); ++k) {
    const double w = kTwoPi * static_cast<double>(k + 1);
    s += w * w * (std::abs(cos_[k]) + std::abs(sin_[k]));
  }
  return s;
}

TrigPoly TrigPoly::scaled(double s) const {
  TrigPoly p = *this;
  p.constant_ *= s;
  for (auto& c : p.cos_) c *= s;
  for (auto& c : p.sin_) c *= s;
  return p;
}

TrigPoly TrigPoly::plus_constant(double c) const {
  TrigPoly p = *this;
  p.constant_ += c;
  return p;
}

TrigPoly operator+(const TrigPoly& x, const TrigPoly& y) {
  TrigPoly p = x;
  p.constant_ += y.constant_;
  if (p.cos_.size() < y.cos_.size()) {
    p.cos_.resize(y.cos_.size(), 0.0);
    p.sin_.resize(y.sin_.size(), 0.0);
  }
  for (std::size_t k = 0; k < y.cos_.size(); ++k) {
    p.cos_[k] += y.cos_[k];
    p.sin_[k] += y.sin_[k];
  }
  return p;
}

double TrigPoly::coefficient(int index) const {
  if (index == 0) return constant_;
  const int k = (index - 1) / 2;
  if (k < 0 || k >= modes()) throw std::out_of_range("trig poly coefficient index");
  return (index % 2 == 1) ? cos_[static_cast<std::size_t>(k)]
                          : sin_[static_cast<std::size_t>(k)];
}

void TrigPoly::set_coefficient(int index, double value) {
  if (index == 0) {
    constant_ = value;
    return;
  }
  const int k = (index - 1) / 2;
  if (k < 0) throw std::out_of_range("trig poly coefficient index");
  ensure_modes(k + 1);
  if (index % 2 == 1)
    cos_[static_cast<std::size_t>(k)] = value;
  else
    sin_[static_cast<std::size_t>(k)] = value;
}

void TrigPoly::ensure_modes(int k) {
  if (k > modes()) {
    cos_.resize(static_cast<std::size_t>(k), 0.0);
    sin_.resize(static_cast<std::size_t>(k), 0.0);
  }
}

void TrigPoly::trim() {
  while (!cos_.empty() && cos_.back() == 0.0 && sin_.back() == 0.0) {
    cos_.pop_back();
    sin_.pop_back();
  }
}

}  // namespace tonguelock
