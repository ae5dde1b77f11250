#include "pmax/processes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pmax/errors.hpp"
#include "pmax/theory.hpp"

namespace pmax {

PmaxSpec::PmaxSpec(XModel x_model, CopulaSpec z_copula, std::vector<double> alpha)
    : x_model_(std::move(x_model)), z_copula_(std::move(z_copula)), alpha_(std::move(alpha)) {
  if (alpha_.empty()) throw ValidationError("alpha must have at least one component");
  for (std::size_t j = 0; j < alpha_.size(); ++j) {
    if (!std::isfinite(alpha_[j]) || alpha_[j] <= 0.0) {
      throw ValidationError("alpha_" + std::to_string(j + 1) + " must be positive and finite");
    }
  }
  if (std::holds_alternative<Example1Process>(x_model_)) {
    if (alpha_.size() != 3) throw ValidationError("the example1 process has dimension 3");
  } else {
    const auto& a = std::get<M4Coefficients>(x_model_);
    if (a.dimension() != alpha_.size()) {
      throw ValidationError("M4 coefficients have " + std::to_string(a.dimension()) +
                            " components but alpha has " + std::to_string(alpha_.size()));
    }
    a.require_normalized();
  }
  if (z_copula_.dimension() != alpha_.size()) {
    throw ValidationError("noise copula dimension does not match alpha");
  }
  require_noise_sampler(z_copula_);
}

std::vector<std::size_t> PmaxSpec::u_set() const { return index_partition(alpha_).u; }

std::vector<std::size_t> PmaxSpec::complement_set() const {
  return index_partition(alpha_).complement;
}

double sample_positive_stable(double beta, Generator& gen) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw DomainError("sample_positive_stable: beta must lie in (0, 1)");
  }
  const double v = std::numbers::pi * gen.uniform();
  const double e = gen.exponential();
  const double a = std::sin(beta * v) / std::pow(std::sin(v), 1.0 / beta);
  const double b = std::pow(std::sin((1.0 - beta) * v) / e, (1.0 - beta) / beta);
  return a * b;
}

void require_noise_sampler(const CopulaSpec& copula) {
  if (std::holds_alternative<copula::M4>(copula.family()) || copula.is_example1g()) {
    throw UnsupportedSampler("no i.i.d. sampler for the " + copula.name() +
                             " copula; it is a limit object, not a noise law");
  }
}

void sample_z_vector(const CopulaSpec& copula, Generator& gen, std::span<double> out) {
  if (out.size() != copula.dimension()) throw ShapeError("sample_z_vector: output size");
  const auto& fam = copula.family();
  if (std::holds_alternative<copula::Independence>(fam)) {
    for (double& z : out) z = gen.frechet();
  } else if (std::holds_alternative<copula::Comonotone>(fam)) {
    const double z = gen.frechet();
    std::fill(out.begin(), out.end(), z);
  } else if (const auto* lg = std::get_if<copula::Logistic>(&fam)) {
    if (lg->beta == 1.0) {
      for (double& z : out) z = gen.frechet();
      return;
    }
    const double s = sample_positive_stable(lg->beta, gen);
    for (double& z : out) z = std::pow(s / gen.exponential(), lg->beta);
  } else {
    require_noise_sampler(copula);
  }
}

std::vector<double> sample_z_vector(const CopulaSpec& copula, Generator& gen) {
  std::vector<double> out(copula.dimension());
  sample_z_vector(copula, gen, out);
  return out;
}

PathGenerator::PathGenerator(const PmaxSpec& spec, RngStream rng, Mode mode)
    : spec_(&spec),
      mode_(mode),
      d_(spec.dimension()),
      gx_(rng.substream(SubStream::X)),
      gz_(rng.substream(SubStream::Z)),
      gj_(rng.substream(SubStream::J)),
      inv_alpha_(spec.dimension()),
      zbuf_(spec.dimension()),
      xbuf_(spec.dimension()) {
  for (std::size_t j = 0; j < d_; ++j) inv_alpha_[j] = 1.0 / spec.alpha()[j];
  if (const auto* a = std::get_if<M4Coefficients>(&spec.x_model())) {
    ring_.assign(a->lags() * a->signatures(), 0.0);
  }
}

void PathGenerator::next_example1(std::span<double> x) {
  if (!primed_) {
    for (double& u : u_) u = gx_.frechet();
    j_[0] = gj_.coin();
    j_[1] = gj_.coin();
    primed_ = true;
  } else {
    u_[0] = u_[1];
    u_[1] = u_[2];
    u_[2] = gx_.frechet();
    j_[0] = j_[1];
    j_[1] = gj_.coin();
  }
  x[0] = u_[0];
  x[1] = j_[0] ? u_[1] : u_[0];
  x[2] = j_[1] ? u_[2] : u_[1];
}

void PathGenerator::next_example1_fresh(std::span<double> x) {
  const double u1 = gx_.frechet();
  const double u2 = gx_.frechet();
  const double u3 = gx_.frechet();
  const bool j1 = gj_.coin();
  const bool j2 = gj_.coin();
  x[0] = u1;
  x[1] = j1 ? u2 : u1;
  x[2] = j2 ? u3 : u2;
}

void PathGenerator::next_m4(std::span<double> x) {
  const auto& a = std::get<M4Coefficients>(spec_->x_model());
  const std::size_t w = a.lags();
  const std::size_t L = a.signatures();
  if (!primed_) {
    // Innovations for m = 1 - k_max, ..., 1 - k_min: the burn-in window.
    for (double& z : ring_) z = gx_.frechet();
    ring_head_ = 0;
    primed_ = true;
  } else {
    for (std::size_t l = 0; l < L; ++l) ring_[ring_head_ * L + l] = gx_.frechet();
    ring_head_ = (ring_head_ + 1) % w;
  }
  // Slot of Zt_{l, i - k} is (head + k_max - k) mod w.
  for (std::size_t j = 0; j < d_; ++j) {
    double m = 0.0;
    for (std::size_t l = 0; l < L; ++l) {
      for (std::size_t off = 0; off < w; ++off) {
        const int k = a.k_max() - static_cast<int>(off);
        const double c = a.at(l, k, j);
        if (c == 0.0) continue;
        m = std::max(m, c * ring_[((ring_head_ + off) % w) * L + l]);
      }
    }
    x[j] = m;
  }
}

void PathGenerator::next_m4_fresh(std::span<double> x) {
  primed_ = false;
  ring_head_ = 0;
  next_m4(x);
}

void PathGenerator::next_x(std::span<double> x) {
  const bool m4 = std::holds_alternative<M4Coefficients>(spec_->x_model());
  if (mode_ == Mode::Dependent) {
    m4 ? next_m4(x) : next_example1(x);
  } else {
    m4 ? next_m4_fresh(x) : next_example1_fresh(x);
  }
}

void PathGenerator::next(std::span<double> x, std::span<double> z, std::span<double> y) {
  next_x(x);
  sample_z_vector(spec_->z_copula(), gz_, z);
  for (std::size_t j = 0; j < d_; ++j) {
    const double zp = inv_alpha_[j] == 1.0 ? z[j] : std::pow(z[j], inv_alpha_[j]);
    y[j] = std::max(x[j], zp);
  }
}

void PathGenerator::next_y(std::span<double> y) { next(xbuf_, zbuf_, y); }

namespace {

const CopulaSpec& independence3() {
  static const CopulaSpec c = CopulaSpec::independence(3);
  return c;
}

}  // namespace

SamplePath simulate_m4(const M4Coefficients& coeffs, std::size_t n, RngStream rng) {
  if (n == 0) throw DomainError("simulate_m4: n must be at least 1");
  coeffs.require_normalized();
  const PmaxSpec spec(coeffs, CopulaSpec::independence(coeffs.dimension()),
                      std::vector<double>(coeffs.dimension(), 1.0));
  return simulate_x(spec, n, rng);
}

SamplePath simulate_example1(std::size_t n, RngStream rng) {
  if (n == 0) throw DomainError("simulate_example1: n must be at least 1");
  const PmaxSpec spec(Example1Process{}, independence3(), {1.0, 1.0, 1.0});
  return simulate_x(spec, n, rng);
}

SamplePath simulate_x(const PmaxSpec& spec, std::size_t n, RngStream rng) {
  if (n == 0) throw DomainError("simulate_x: n must be at least 1");
  PathGenerator gen(spec, rng);
  SamplePath path(n, spec.dimension(), rng);
  for (std::size_t i = 0; i < n; ++i) gen.next_x(path.row(i));
  return path;
}

SamplePath simulate_pmax(const PmaxSpec& spec, std::size_t n, RngStream rng) {
  if (n == 0) throw DomainError("simulate_pmax: n must be at least 1");
  PathGenerator gen(spec, rng);
  SamplePath path(n, spec.dimension(), rng);
  for (std::size_t i = 0; i < n; ++i) gen.next_y(path.row(i));
  return path;
}

PmaxDraws simulate_pmax_draws(const PmaxSpec& spec, std::size_t n, RngStream rng) {
  if (n == 0) throw DomainError("simulate_pmax_draws: n must be at least 1");
  PathGenerator gen(spec, rng);
  const std::size_t d = spec.dimension();
  PmaxDraws out{SamplePath(n, d, rng), SamplePath(n, d, rng), SamplePath(n, d, rng)};
  for (std::size_t i = 0; i < n; ++i) gen.next(out.x.row(i), out.z.row(i), out.y.row(i));
  return out;
}

SamplePath combine_pmax(const SamplePath& x, const SamplePath& z, std::span<const double> alpha) {
  if (x.length() != z.length() || x.dimension() != z.dimension() ||
      alpha.size() != x.dimension()) {
    throw ShapeError("combine_pmax: X, Z and alpha shapes differ");
  }
  SamplePath y(x.length(), x.dimension(), z.provenance());
  for (std::size_t i = 0; i < x.length(); ++i) {
    for (std::size_t j = 0; j < x.dimension(); ++j) {
      const double zp = alpha[j] == 1.0 ? z(i, j) : std::pow(z(i, j), 1.0 / alpha[j]);
      y(i, j) = std::max(x(i, j), zp);
    }
  }
  return y;
}

SamplePath simulate_iid_surrogate(const PmaxSpec& spec, std::size_t n, RngStream rng) {
  if (n == 0) throw DomainError("simulate_iid_surrogate: n must be at least 1");
  PathGenerator gen(spec, rng, PathGenerator::Mode::Surrogate);
  SamplePath path(n, spec.dimension(), rng);
  for (std::size_t i = 0; i < n; ++i) gen.next_y(path.row(i));
  return path;
}

}  // namespace pmax
