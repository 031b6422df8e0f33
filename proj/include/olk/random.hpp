#ifndef OLK_RANDOM_HPP
#define OLK_RANDOM_HPP

#include <cstdint>
#include <random>

namespace olk {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent random stream for sample `index` under `seed`. Streams depend
/// only on (seed, index), never on which worker draws them.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index)
      : engine_(splitmix64(seed ^ splitmix64(index))) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on {0, …, n−1}.
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  /// Uniform on (0, 1].
  double unit() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace olk

#endif  // OLK_RANDOM_HPP
