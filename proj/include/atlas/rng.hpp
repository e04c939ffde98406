#ifndef ATLAS_RNG_HPP
#define ATLAS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Core>

namespace atlas {

// splitmix64 finalizer, used only to spread seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a, for naming substreams by string label.
inline std::uint64_t hash_label(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Deterministic random stream. Substreams are derived from the *seed* of the
// parent, never from its draw position, so the stream consumed by one worker
// is independent of how much any other stream has been used. Gaussians come
// from an explicit Box-Muller transform on top of mt19937_64; both halves of
// the pair are used. Reproducibility is therefore pinned down by the engine
// (fully specified by the standard) plus libm's log/sqrt/sin/cos.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix64(seed ^ kSalt)) {}

  std::uint64_t seed() const { return seed_; }

  Rng child(std::uint64_t stream) const {
    return Rng(mix64(seed_ ^ mix64(stream + kSalt)));
  }
  Rng child(std::string_view label) const { return child(hash_label(label)); }
  Rng child(std::string_view label, std::uint64_t index) const {
    return child(hash_label(label)).child(index);
  }

  // Uniform on [0, 1), 53 random bits.
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * kTwoPi * 0.5 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Eigen::VectorXd normal_vector(Eigen::Index n) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  void fill_normal(Eigen::Ref<Eigen::VectorXd> v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = normal();
  }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection-free would bias; n here is tiny relative to 2^64 so rejection
    // almost never loops.
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

 private:
  static constexpr std::uint64_t kSalt = 0x5851f42d4c957f2dULL;
  static constexpr double kTwoPi = 6.283185307179586476925286766559;

  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace atlas

#endif
