#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>
#include <span>

namespace ltlab {

/// Philox4x32-10 counter-based block function (Salmon et al., SC'11).
/// Maps a 128-bit counter and a 64-bit key to 128 pseudo-random bits.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Identifies a substream: an (experiment, replica) pair.
struct StreamId {
  std::uint32_t experiment = 0;
  std::uint32_t replica = 0;
  friend bool operator==(const StreamId&, const StreamId&) = default;
};

/// Deterministic random stream keyed by (master_seed, stream id).
///
/// The master seed is the Philox key; the stream id occupies the upper 64
/// counter bits and the draw index the lower 64. Distinct stream ids therefore
/// address disjoint counter ranges, so streams never overlap and each replica
/// can be generated independently of scheduling.
///
/// Satisfies UniformRandomBitGenerator. An instance must be used by one thread
/// at a time; copy or call replica() to hand a stream to another worker.
class RngStream {
public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, StreamId id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Standard normal.
  double normal();
  void fill_normal(std::span<double> out);

  /// Stream for replica r of the same experiment and master seed.
  RngStream replica(std::uint32_t r) const { return RngStream(seed_, {id_.experiment, r}); }

  std::uint64_t master_seed() const { return seed_; }
  StreamId id() const { return id_; }

private:
  void refill();

  std::uint64_t seed_;
  StreamId id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;  // 32-bit words consumed from buffer_
  std::normal_distribution<double> normal_{0.0, 1.0};
};

RngStream substream(std::uint64_t master_seed, StreamId id);

}  // namespace ltlab
