#include "tonguelock/base.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tonguelock {

double wrap_unit(double t) {
  double r = t - std::floor(t);
  if (r >= 1.0) r -= 1.0;  // t slightly below an integer can round up
  return r;
}

double circle_distance(double a, double b) {
  double d = wrap_unit(a - b);
  return d <= 0.5 ? d : 1.0 - d;
}

double base_phase(const BasePoint& p) {
  if (const auto* t = std::get_if<TorusPoint>(&p)) {
    if (t->coords.empty()) throw std::invalid_argument("empty torus point");
    return t->coords.back();
  }
  return std::get<OdometerPoint>(p).phase;
}

namespace {

double odometer_embedding(const std::vector<int>& digits,
                          const std::vector<int>& radices) {
  double v = 0.0;
  double scale = 1.0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    scale *= static_cast<double>(radices[i]);
    v += static_cast<double>(digits[i]) / scale;
  }
  return wrap_unit(v);
}

}  // namespace

BaseMap BaseMap::rotation(std::vector<double> omega) {
  if (omega.empty()) throw std::invalid_argument("rotation needs >= 1 frequency");
  BaseMap m;
  m.kind_ = Kind::Rotation;
  for (double& w : omega) w = wrap_unit(w);
  m.omega_ = std::move(omega);
  return m;
}

BaseMap BaseMap::skew_shift(double alpha) {
  BaseMap m;
  m.kind_ = Kind::SkewShift;
  m.alpha_ = wrap_unit(alpha);
  return m;
}

BaseMap BaseMap::odometer(std::vector<int> radices) {
  if (radices.empty()) throw std::invalid_argument("odometer needs >= 1 radix");
  for (int r : radices)
    if (r < 2) throw std::invalid_argument("odometer radices must be >= 2");
  BaseMap m;
  m.kind_ = Kind::Odometer;
  m.radices_ = std::move(radices);
  return m;
}

std::size_t BaseMap::dimension() const {
  switch (kind_) {
    case Kind::Rotation: return omega_.size();
    case Kind::SkewShift: return 2;
    case Kind::Odometer: return radices_.size();
  }
  return 0;
}

double BaseMap::lipschitz_in_base() const {
  switch (kind_) {
    case Kind::Rotation: return 1.0;
    case Kind::SkewShift: return 2.0;  // one step stretches by at most |dx|+|dy|
    case Kind::Odometer: return 1.0;   // declared; adding one shifts the embedding
  }
  return 1.0;
}

BasePoint BaseMap::start() const {
  if (kind_ == Kind::Odometer)
    return OdometerPoint{std::vector<int>(radices_.size(), 0), 0.0};
  return TorusPoint{std::vector<double>(dimension(), 0.0)};
}

BasePoint BaseMap::torus_point(std::vector<double> coords) const {
  if (kind_ == Kind::Odometer)
    throw std::invalid_argument("torus point on an odometer base");
  if (coords.size() != dimension())
    throw std::invalid_argument("base point dimension mismatch");
  for (double& c : coords) c = wrap_unit(c);
  return TorusPoint{std::move(coords)};
}

BasePoint BaseMap::odometer_point(std::vector<int> digits) const {
  if (kind_ != Kind::Odometer)
    throw std::invalid_argument("odometer point on a torus base");
  if (digits.size() != radices_.size())
    throw std::invalid_argument("base point dimension mismatch");
  for (std::size_t i = 0; i < digits.size(); ++i)
    if (digits[i] < 0 || digits[i] >= radices_[i])
      throw std::invalid_argument("odometer digit out of range");
  const double phase = odometer_embedding(digits, radices_);
  return OdometerPoint{std::move(digits), phase};
}

void BaseMap::check_point(const BasePoint& p) const {
  if (kind_ == Kind::Odometer) {
    const auto* od = std::get_if<OdometerPoint>(&p);
    if (od == nullptr || od->digits.size() != radices_.size())
      throw std::invalid_argument("base point does not match odometer domain");
  } else {
    const auto* t = std::get_if<TorusPoint>(&p);
    if (t == nullptr || t->coords.size() != dimension())
      throw std::invalid_argument("base point does not match torus domain");
  }
}

void BaseMap::step_in_place(BasePoint& p) const {
  check_point(p);
  switch (kind_) {
    case Kind::Rotation: {
      auto& c = std::get<TorusPoint>(p).coords;
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = wrap_unit(c[i] + omega_[i]);
      break;
    }
    case Kind::SkewShift: {
      auto& c = std::get<TorusPoint>(p).coords;
      const double x = c[0];
      c[0] = wrap_unit(x + alpha_);
      c[1] = wrap_unit(c[1] + x);
      break;
    }
    case Kind::Odometer: {
      auto& od = std::get<OdometerPoint>(p);
      for (std::size_t i = 0; i < od.digits.size(); ++i) {
        if (++od.digits[i] < radices_[i]) break;
        od.digits[i] = 0;  // carry; wraps past the window
      }
      od.phase = odometer_embedding(od.digits, radices_);
      break;
    }
  }
}

BasePoint BaseMap::step(const BasePoint& p) const {
  BasePoint q = p;
  step_in_place(q);
  return q;
}

std::vector<BasePoint> BaseMap::orbit(const BasePoint& p, long n) const {
  if (n < 1) throw std::invalid_argument("orbit length must be >= 1");
  std::vector<BasePoint> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  out.push_back(p);
  for (long i = 0; i < n; ++i) out.push_back(step(out.back()));
  return out;
}

BasePoint BaseMap::sample(SplitMix64& rng) const {
  if (kind_ == Kind::Odometer) {
    std::vector<int> d(radices_.size());
    for (std::size_t i = 0; i < d.size(); ++i)
      d[i] = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(radices_[i])));
    const double phase = odometer_embedding(d, radices_);
    return OdometerPoint{std::move(d), phase};
  }
  std::vector<double> c(dimension());
  for (double& x : c) x = rng.next_double();
  return TorusPoint{std::move(c)};
}

std::vector<BasePoint> BaseMap::grid(int nodes) const {
  if (nodes < 1) throw std::invalid_argument("grid needs >= 1 node");
  std::vector<BasePoint> out;
  if (kind_ == Kind::Odometer) {
    out.reserve(static_cast<std::size_t>(nodes));
    std::vector<int> d(radices_.size(), 0);
    for (int j = 0; j < nodes; ++j) {
      out.push_back(OdometerPoint{d, odometer_embedding(d, radices_)});
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (++d[i] < radices_[i]) break;
        d[i] = 0;
      }
    }
    return out;
  }
  const std::size_t dim = dimension();
  std::size_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) total *= static_cast<std::size_t>(nodes);
  out.reserve(total);
  std::vector<int> idx(dim, 0);
  for (std::size_t j = 0; j < total; ++j) {
    std::vector<double> c(dim);
    for (std::size_t i = 0; i < dim; ++i)
      c[i] = static_cast<double>(idx[i]) / static_cast<double>(nodes);
    out.push_back(TorusPoint{std::move(c)});
    for (std::size_t i = 0; i < dim; ++i) {
      if (++idx[i] < nodes) break;
      idx[i] = 0;
    }
  }
  return out;
}

std::string BaseMap::describe() const {
  std::ostringstream s;
  switch (kind_) {
    case Kind::Rotation: {
      s << "rotation(";
      for (std::size_t i = 0; i < omega_.size(); ++i)
        s << (i ? "," : "") << omega_[i];
      s << ")";
      break;
    }
    case Kind::SkewShift: s << "skewshift(" << alpha_ << ")"; break;
    case Kind::Odometer: {
      s << "odometer(";
      for (std::size_t i = 0; i < radices_.size(); ++i)
        s << (i ? "," : "") << radices_[i];
      s << ")";
      break;
    }
  }
  return s.str();
}

std::vector<double> SchwartzmanGenerators::values() const {
  std::vector<double> v;
  v.reserve(witnesses.size());
  for (const auto& w : witnesses) v.push_back(w.value);
  return v;
}

SchwartzmanGenerators schwartzman_generators(const BaseMap& map) {
  SchwartzmanGenerators out;
  out.rigor = SchwartzmanGenerators::Rigor::Exact;

  // t = 1 with constant phi == 1 and psi == 0, for every base.
  out.witnesses.push_back(CocycleWitness{
      1.0, [](const BasePoint&) { return 1.0; },
      [](const BasePoint&) { return 0.0; }});

  switch (map.kind()) {
    case BaseMap::Kind::Rotation: {
      for (std::size_t i = 0; i < map.omega().size(); ++i) {
        const double w = map.omega()[i];
        out.witnesses.push_back(CocycleWitness{
            w, [w](const BasePoint&) { return w; },
            [i](const BasePoint& p) { return std::get<TorusPoint>(p).coords[i]; }});
      }
      break;
    }
    case BaseMap::Kind::SkewShift: {
      const double a = map.alpha();
      out.witnesses.push_back(CocycleWitness{
          a, [a](const BasePoint&) { return a; },
          [](const BasePoint& p) { return std::get<TorusPoint>(p).coords[0]; }});
      break;
    }
    case BaseMap::Kind::Odometer: {
      // Tower level k: psi = (position inside the height-h_k tower) / h_k,
      // phi == 1/h_k. Adding one advances the position by 1 mod h_k.
      const std::vector<int> radices = map.radices();
      double height = 1.0;
      for (std::size_t k = 0; k < radices.size(); ++k) {
        height *= static_cast<double>(radices[k]);
        const double h = height;
        const std::size_t levels = k + 1;
        out.witnesses.push_back(CocycleWitness{
            1.0 / h, [h](const BasePoint&) { return 1.0 / h; },
            [radices, levels, h](const BasePoint& p) {
              const auto& d = std::get<OdometerPoint>(p).digits;
              double pos = 0.0;
              double weight = 1.0;
              for (std::size_t i = 0; i < levels; ++i) {
                pos += weight * static_cast<double>(d[i]);
                weight *= static_cast<double>(radices[i]);
              }
              return pos / h;
            }});
      }
      break;
    }
  }
  return out;
}

double cocycle_residual(const BaseMap& map,
                        const std::function<double(const BasePoint&)>& phi,
                        const std::function<double(const BasePoint&)>& psi,
                        int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("cocycle_residual needs >= 1 sample");
  SplitMix64 rng = stream_for(seed, 0);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    BasePoint x = map.sample(rng);
    BasePoint gx = map.step(x);
    const double delta = psi(gx) - psi(x);
    const double d = circle_distance(delta, phi(x));
    if (d > worst) worst = d;
  }
  return worst;
}

}  // namespace tonguelock
