#ifndef MLP_RNG_HPP
#define MLP_RNG_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace mlp {

/// Multi-index into the recursion tree. The root is the single element [0];
/// descending into level l, sample i appends (l, i) for the first operand
/// and (-l, i) for the second. Distinct paths address independent streams.
class IndexPath {
public:
  IndexPath() = default;
  explicit IndexPath(std::vector<std::int64_t> elems) : elems_(std::move(elems)) {}
  static IndexPath root(std::int64_t r = 0) { return IndexPath({r}); }

  void extend(std::int64_t level, std::int64_t index) {
    elems_.push_back(level);
    elems_.push_back(index);
  }
  void pop() {
    elems_.pop_back();
    elems_.pop_back();
  }

  std::span<const std::int64_t> elements() const { return elems_; }
  bool empty() const { return elems_.empty(); }
  std::size_t size() const { return elems_.size(); }

  friend bool operator==(const IndexPath&, const IndexPath&) = default;

private:
  std::vector<std::int64_t> elems_;
};

/// 256-bit master seed, stored as four little-endian 64-bit words.
struct Seed256 {
  std::array<std::uint64_t, 4> words{};

  /// Widens a 64-bit seed with four SplitMix64 steps. This expansion is part
  /// of the published interface: the same u64 always produces the same state.
  static Seed256 from_u64(std::uint64_t s);
};

/// Separates draw streams from auxiliary derivations (per-run seeds,
/// verification samplers) so that equal paths never alias across uses.
enum class StreamChannel : std::uint8_t { draw = 0, aux = 1 };

struct Digest128 {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  friend bool operator==(const Digest128&, const Digest128&) = default;
};

/// Key for one stream: a pure function of (master seed, path, channel).
struct StreamKey {
  Digest128 path_digest;
};

StreamKey make_stream_key(const Seed256& seed, const IndexPath& path,
                          StreamChannel channel = StreamChannel::draw);

/// Philox4x64-10 block: counter-mode, so any block is addressable directly.
std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 2>& key,
                                        const std::array<std::uint64_t, 4>& counter);

/// Counter-mode generator state. Sequential within a stream; distinct
/// streams can run concurrently without coordination.
class StreamState {
public:
  StreamState() = default;
  explicit StreamState(const StreamKey& key)
      : key_{key.path_digest.lo, key.path_digest.hi} {}

  std::uint64_t next_u64();

private:
  std::array<std::uint64_t, 2> key_{};
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 4> buf_{};
  unsigned buf_pos_ = 4;  // empty
};

struct DrawCounter {
  std::uint64_t normals = 0;
  std::uint64_t uniforms = 0;

  DrawCounter& operator+=(const DrawCounter& o) {
    normals += o.normals;
    uniforms += o.uniforms;
    return *this;
  }
  std::uint64_t total() const { return normals + uniforms; }
  friend bool operator==(const DrawCounter&, const DrawCounter&) = default;
};

StreamState derive_stream(const Seed256& seed, const IndexPath& path,
                          StreamChannel channel = StreamChannel::draw);

/// Derives an independent sub-seed, e.g. one master seed per repetition.
Seed256 derive_subseed(const Seed256& seed, std::int64_t tag, std::int64_t index);

/// Top 53 bits of one generator word; every value is exactly representable.
inline double draw_uniform(StreamState& stream, DrawCounter& ledger) {
  ledger.uniforms += 1;
  return static_cast<double>(stream.next_u64() >> 11) * 0x1.0p-53;
}

/// Inverse of the standard normal CDF (Wichura's AS241, double precision).
double inverse_normal_cdf(double p);

/// One uniform word per normal: counts stay exact and platform-independent.
inline double draw_normal(StreamState& stream, DrawCounter& ledger) {
  ledger.normals += 1;
  double u = (static_cast<double>(stream.next_u64() >> 11) + 0.5) * 0x1.0p-53;
  return inverse_normal_cdf(u);
}

inline void draw_normal_vec(StreamState& stream, std::span<double> out,
                            DrawCounter& ledger) {
  for (double& v : out) v = draw_normal(stream, ledger);
}

}  // namespace mlp

#endif  // MLP_RNG_HPP
