#ifndef HAZMON_RNG_HPP
#define HAZMON_RNG_HPP

#include <cmath>
#include <cstdint>

namespace hazmon {

// Counter-based random stream (Philox 4x32-10).  A stream is addressed by a
// 64-bit seed plus three coordinates (grid point, replicate, bootstrap
// iteration).  Streams with distinct coordinates are independent, and the
// values drawn from a stream depend only on (seed, coordinates, draw index),
// never on sharing or scheduling.  This is what makes simulation output
// reproducible under any thread count.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint32_t gridpoint, std::uint32_t replicate,
            std::uint32_t bootstrap)
      : key0_(static_cast<std::uint32_t>(seed)),
        key1_(static_cast<std::uint32_t>(seed >> 32)),
        ctr1_(gridpoint),
        ctr2_(replicate),
        ctr3_(bootstrap) {}

  std::uint64_t next_u64() {
    if (have_ == 0) refill();
    --have_;
    const std::uint64_t lo = out_[2 * have_];
    const std::uint64_t hi = out_[2 * have_ + 1];
    return lo | (hi << 32);
  }

  // Uniform on the open interval (0,1); never returns an exact 0 or 1.
  double next_uniform() {
    const std::uint64_t bits = next_u64() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  // Standard exponential by inversion; strictly positive.
  double next_exponential() { return -std::log1p(-next_uniform()); }

 private:
  static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t* hi,
                      std::uint32_t* lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    *hi = static_cast<std::uint32_t>(p >> 32);
    *lo = static_cast<std::uint32_t>(p);
  }

  void refill() {
    const std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
    const std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
    std::uint32_t c0 = blk_, c1 = ctr1_, c2 = ctr2_, c3 = ctr3_;
    std::uint32_t k0 = key0_, k1 = key1_;
    for (int round = 0; round < 10; ++round) {
      std::uint32_t hi0, lo0, hi1, lo1;
      mulhilo(kM0, c0, &hi0, &lo0);
      mulhilo(kM1, c2, &hi1, &lo1);
      const std::uint32_t n0 = hi1 ^ c1 ^ k0;
      const std::uint32_t n1 = lo1;
      const std::uint32_t n2 = hi0 ^ c3 ^ k1;
      const std::uint32_t n3 = lo0;
      c0 = n0;
      c1 = n1;
      c2 = n2;
      c3 = n3;
      k0 += kW0;
      k1 += kW1;
    }
    out_[0] = c0;
    out_[1] = c1;
    out_[2] = c2;
    out_[3] = c3;
    ++blk_;
    have_ = 2;
  }

  std::uint32_t key0_, key1_;
  std::uint32_t ctr1_, ctr2_, ctr3_;
  std::uint32_t blk_ = 0;
  std::uint32_t out_[4] = {0, 0, 0, 0};
  int have_ = 0;
};

}  // namespace hazmon

#endif
