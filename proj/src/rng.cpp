#include "mlp/rng.hpp"

#include <cmath>
#include <cstring>

namespace mlp {

namespace {

constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kPhiloxW0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kPhiloxW1 = 0xBB67AE8584CAA73BULL;

inline void mul_hi_lo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                      std::uint64_t& lo) {
  unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(prod >> 64);
  lo = static_cast<std::uint64_t>(prod);
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

Seed256 Seed256::from_u64(std::uint64_t s) {
  Seed256 out;
  std::uint64_t state = s;
  for (auto& w : out.words) w = splitmix64(state);
  return out;
}

std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 2>& key,
                                        const std::array<std::uint64_t, 4>& counter) {
  std::array<std::uint64_t, 4> c = counter;
  std::uint64_t k0 = key[0], k1 = key[1];
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mul_hi_lo(kPhiloxM0, c[0], hi0, lo0);
    mul_hi_lo(kPhiloxM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
    k0 += kPhiloxW0;
    k1 += kPhiloxW1;
  }
  return c;
}

namespace {

// Davies-Meyer compression over Philox blocks: the running 128-bit state keys
// the block cipher, the 256-bit message block is the counter, and the first
// two output words fold back into the state.
struct Digester {
  std::array<std::uint64_t, 2> state{0x6A09E667F3BCC908ULL, 0xBB67AE8584CAA73BULL};
  std::array<std::uint64_t, 4> block{};
  unsigned fill = 0;

  void absorb(std::uint64_t w) {
    block[fill++] = w;
    if (fill == 4) flush();
  }
  void flush() {
    auto out = philox4x64(state, block);
    state[0] ^= out[0];
    state[1] ^= out[1];
    block = {};
    fill = 0;
  }
  Digest128 finish() {
    if (fill > 0) flush();
    return {state[0], state[1]};
  }
};

}  // namespace

StreamKey make_stream_key(const Seed256& seed, const IndexPath& path,
                          StreamChannel channel) {
  // Canonical encoding: seed words, channel, then the path as a
  // length-prefixed list of little-endian signed 64-bit integers.
  Digester d;
  for (std::uint64_t w : seed.words) d.absorb(w);
  d.absorb(static_cast<std::uint64_t>(channel));
  d.absorb(static_cast<std::uint64_t>(path.size()));
  for (std::int64_t e : path.elements()) d.absorb(static_cast<std::uint64_t>(e));
  return StreamKey{d.finish()};
}

StreamState derive_stream(const Seed256& seed, const IndexPath& path,
                          StreamChannel channel) {
  return StreamState(make_stream_key(seed, path, channel));
}

Seed256 derive_subseed(const Seed256& seed, std::int64_t tag, std::int64_t index) {
  IndexPath p({tag, index});
  StreamState s = derive_stream(seed, p, StreamChannel::aux);
  Seed256 out;
  for (auto& w : out.words) w = s.next_u64();
  return out;
}

std::uint64_t StreamState::next_u64() {
  if (buf_pos_ == 4) {
    buf_ = philox4x64(key_, {block_, 0, 0, 0});
    ++block_;
    buf_pos_ = 0;
  }
  return buf_[buf_pos_++];
}

// AS241 (Wichura 1988), the PPND16 branch: relative error below 1e-15 on
// (0,1). Input 0 or 1 maps to -inf/+inf.
double inverse_normal_cdf(double p) {
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                 6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
               1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
             1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
           (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                 3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
               5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
             4.2313330701600911252e+1) * r + 1.0);
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  if (r <= 0.0) return (q < 0.0) ? -HUGE_VAL : HUGE_VAL;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
              3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
            4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
          (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
              6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
            2.05319162663775882187e+0) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
              2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
            5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
          (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
              1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
            5.99832206555887937690e-1) * r + 1.0);
  }
  return (q < 0.0) ? -val : val;
}

}  // namespace mlp
