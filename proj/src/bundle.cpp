#include "gaf/bundle.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "gaf/errors.hpp"
#include "gaf/spectra.hpp"

namespace gaf {

FactorDescriptor FactorDescriptor::gaussian(double center, double width) {
  FactorDescriptor d;
  d.kind = Kind::Gaussian;
  d.center = center;
  d.width = width;
  return d;
}

FactorDescriptor FactorDescriptor::bump(double center, double radius) {
  FactorDescriptor d;
  d.kind = Kind::Bump;
  d.center = center;
  d.width = radius;
  return d;
}

cplx FactorDescriptor::operator()(double x) const {
  switch (kind) {
    case Kind::Zero: return 0.0;
    case Kind::Gaussian: {
      const double z = (x - center) / width;
      return std::exp(-0.5 * z * z);
    }
    case Kind::Bump: {
      const double r = (x - center) / width;
      if (std::abs(r) >= 1.0) return 0.0;
      return std::exp(1.0 - 1.0 / (1.0 - r * r));
    }
    case Kind::Trig: throw ContractViolation("FactorDescriptor: trig factor needs angles");
  }
  return 0.0;
}

cplx FactorDescriptor::compact_value(int n, std::span<const double> angles) const {
  if (kind == Kind::Zero) return 0.0;
  if (kind != Kind::Trig) throw ContractViolation("FactorDescriptor: compact factor must be trigonometric");
  cplx acc = 0.0;
  if (n == 2) {
    for (const auto& [m, c] : circle) acc += c * std::exp(cplx(0.0, m * angles[0]));
    return acc;
  }
  for (const auto& [ix, c] : rotation) {
    CMat D = wigner_D(ix.l, angles[0], angles[1], angles[2]);
    acc += (2.0 * ix.l + 1.0) * c * D(ix.q + ix.l, ix.p + ix.l);
  }
  return acc;
}

int FactorDescriptor::band() const {
  int b = 0;
  for (const auto& [m, c] : circle) b = std::max(b, std::abs(m));
  for (const auto& [ix, c] : rotation) b = std::max(b, ix.l);
  return b;
}

std::string FactorDescriptor::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Zero: os << "zero"; break;
    case Kind::Gaussian: os << "gaussian(" << center << "," << width << ")"; break;
    case Kind::Bump: os << "bump(" << center << "," << width << ")"; break;
    case Kind::Trig: os << "trig(band " << band() << ")"; break;
  }
  return os.str();
}

TestFunctionBundle::TestFunctionBundle(std::string name, Level level, int n)
    : name_(std::move(name)), level_(level), n_(n), chart_([&] {
        LevelGrid g;
        g.level = level;
        g.n = n;
        return g.chart();
      }()) {
  for (std::size_t i = 0; i < chart_.dimension(); ++i) {
    AxisKind k = chart_.axis_kinds()[i];
    if (is_compact(k)) continue;
    labels_.push_back(chart_.axis_labels()[i]);
    factors_.push_back(FactorDescriptor::gaussian(0.0, 1.0));
  }
  compact_.kind = FactorDescriptor::Kind::Trig;
  compact_.circle[0] = 1.0;
  compact_.rotation.push_back({SO3Index{0, 0, 0}, 1.0});
}

FactorDescriptor& TestFunctionBundle::factor(const std::string& label) {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return factors_[i];
  throw ContractViolation("bundle: no axis labelled " + label);
}

const FactorDescriptor& TestFunctionBundle::factor(const std::string& label) const {
  return const_cast<TestFunctionBundle*>(this)->factor(label);
}

bool TestFunctionBundle::has_compact() const {
  const auto k = chart_.axis_kinds().back();
  return is_compact(k);
}

cplx TestFunctionBundle::evaluate(std::span<const double> coords) const {
  if (coords.size() != chart_.dimension()) throw ContractViolation("bundle: coordinate count mismatch");
  cplx v = 1.0;
  for (std::size_t i = 0; i < factors_.size(); ++i) v *= factors_[i](coords[i]);
  if (has_compact()) v *= compact_.compact_value(n_, coords.subspan(factors_.size()));
  return v;
}

GroupFunction TestFunctionBundle::group_function() const {
  return [self = *this](const GroupElement& g) {
    double buf[16];
    std::span<double> x(buf, self.chart_.dimension());
    self.chart_.coords(g, x);
    return self.evaluate(x);
  };
}

SeparableFunction TestFunctionBundle::sample(const LevelGrid& grid) const {
  if (grid.level != level_ || grid.n != n_) throw ContractViolation("bundle: grid is for a different level");
  SeparableFunction out;
  const auto axes = grid.spatial_axes();
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& d = factors_[i];
    auto f = gaf::sample({axes[i]}, [&](std::span<const double> x) { return d(x[0]); });
    f.ordering = Ordering::NAK;
    out.factors.push_back(std::move(f));
  }
  if (has_compact()) {
    std::vector<Axis> k(axes.begin() + static_cast<std::ptrdiff_t>(factors_.size()), axes.end());
    auto f = gaf::sample(k, [&](std::span<const double> x) { return compact_.compact_value(n_, x); });
    f.ordering = Ordering::NAK;
    out.factors.push_back(std::move(f));
  }
  return out;
}

std::vector<std::pair<std::string, double>> TestFunctionBundle::boundary_ratios(const LevelGrid& grid) const {
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const AxisKind k = chart_.axis_kinds()[i];
    const AxisGrid& g = grid.grid_for(k);
    const auto& d = factors_[i];
    double peak = 0.0;
    if (d.kind == FactorDescriptor::Kind::Zero) {
      out.push_back({labels_[i], 0.0});
      continue;
    }
    // descriptors peak at their center when it lies inside the range
    const double c = std::clamp(d.center, g.min, g.max);
    peak = std::abs(d(c));
    const double edge = std::max(std::abs(d(g.min)), std::abs(d(g.max)));
    out.push_back({labels_[i], peak > 0 ? edge / peak : 1.0});
  }
  return out;
}

namespace {

void default_compact(FactorDescriptor& c, int n) {
  c.kind = FactorDescriptor::Kind::Trig;
  c.circle = {{0, 1.0}, {1, 0.5}, {-2, cplx(0.0, 0.25)}};
  c.rotation = {{SO3Index{0, 0, 0}, 1.0}, {SO3Index{1, 1, 0}, 0.4}, {SO3Index{2, -1, 2}, cplx(0.0, 0.3)}};
  (void)n;
}

double default_center(AxisKind k, int index) {
  switch (k) {
    case AxisKind::Translation: return index == 0 ? 0.3 : (index == 1 ? -0.2 : 0.1);
    case AxisKind::Scale: return 0.2;
    case AxisKind::Diagonal: return index == 0 ? 0.1 : -0.15;
    case AxisKind::Nilpotent: return index % 2 == 0 ? -0.2 : 0.25;
    default: return 0.0;
  }
}

}  // namespace

bool known_bundle(const std::string& name) {
  return name == "zero" || name == "gaussian" || name == "mixed" || name == "random";
}

TestFunctionBundle make_bundle(const std::string& name, Level level, int n, std::uint64_t seed) {
  if (!known_bundle(name)) throw ConfigurationError("unknown bundle '" + name + "' (expected zero, gaussian, mixed or random)");
  TestFunctionBundle b(name, level, n);
  const Chart& c = b.chart();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> centre(-0.5, 0.5), width(0.6, 0.9);
  std::normal_distribution<double> normal(0.0, 1.0);
  int per_kind[4] = {0, 0, 0, 0};
  bool bumped = false;
  for (std::size_t i = 0; i < c.dimension(); ++i) {
    const AxisKind k = c.axis_kinds()[i];
    if (is_compact(k)) continue;
    const int slot = static_cast<int>(k);
    auto& d = b.factor(c.axis_labels()[i]);
    if (name == "zero") {
      d = FactorDescriptor::zero();
    } else if (name == "random") {
      d = FactorDescriptor::gaussian(centre(rng), width(rng));
    } else if (name == "mixed" && !bumped) {
      d = FactorDescriptor::bump(default_center(k, per_kind[slot]), 4.0);
      bumped = true;
    } else {
      d = FactorDescriptor::gaussian(default_center(k, per_kind[slot]), 0.8);
    }
    ++per_kind[slot];
  }
  auto& kc = b.compact();
  if (name == "zero") {
    kc = FactorDescriptor::zero();
  } else if (name == "random") {
    kc.kind = FactorDescriptor::Kind::Trig;
    kc.circle.clear();
    kc.rotation.clear();
    for (int m = -2; m <= 2; ++m) kc.circle[m] = cplx(normal(rng), normal(rng));
    for (int l = 0; l <= 2; ++l)
      for (int p = -l; p <= l; ++p)
        for (int q = -l; q <= l; ++q) kc.rotation.push_back({SO3Index{l, p, q}, cplx(normal(rng), normal(rng))});
  } else {
    default_compact(kc, n);
  }
  return b;
}

BundlePair make_bundle_pair(const std::string& name, Level level, int n, std::uint64_t seed) {
  TestFunctionBundle plus = make_bundle(name, level, n, seed);
  TestFunctionBundle minus = name == "random" ? make_bundle(name, level, n, seed ^ 0x9e3779b97f4a7c15ULL) : plus;
  return BundlePair{plus, minus};
}

}  // namespace gaf
