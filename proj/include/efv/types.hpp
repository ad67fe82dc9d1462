// Core dense types and small numeric helpers shared by every module.
#ifndef EFV_TYPES_HPP
#define EFV_TYPES_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace efv {

template <class S> using Vec3T = Eigen::Matrix<S, 3, 1>;
template <class S> using Vec5T = Eigen::Matrix<S, 5, 1>;
template <class S> using Mat3T = Eigen::Matrix<S, 3, 3>;
template <class S> using Mat5T = Eigen::Matrix<S, 5, 5>;
/// Per-variable gradient block: row v holds the spatial gradient of variable v.
template <class S> using Grad53T = Eigen::Matrix<S, 5, 3>;

using Vec3 = Vec3T<double>;
using Vec5 = Vec5T<double>;
using Mat3 = Mat3T<double>;
using Mat5 = Mat5T<double>;
using Grad53 = Grad53T<double>;

/// Primitive / conservative component indices.
enum : int { RHO = 0, VX = 1, VY = 2, VZ = 3, PRE = 4, ENE = 4 };

/// Neumaier-compensated accumulator for long audit sums (volume partitions,
/// norms) where plain summation would lose the last digits the tests pin.
class KahanSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Deterministic uniform doubles from a 64-bit generator state.
/// std::uniform_real_distribution is implementation-defined; this mapping is
/// portable and used everywhere randomness feeds mesh or state construction.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ull) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1,1].
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

  /// Uniform integer in [0, m).
  std::uint64_t next_below(std::uint64_t m) { return next_u64() % m; }

 private:
  std::uint64_t state_;
};

/// Mixes a base seed with a stream index (grid size, node id, ...) so related
/// runs draw independent, reproducible sequences.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed ^ (stream * 0xD1B54A32D192ED03ull + 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  return z ^ (z >> 29);
}

}  // namespace efv

#endif  // EFV_TYPES_HPP
